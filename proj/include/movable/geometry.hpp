#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace movable {

// Thrown whenever an input violates a documented precondition (non-finite
// coordinate, negative radius, degenerate polygon, dangling index, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Screen-space location in px; +x right, +y down.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Translation vector in px.
struct Delta {
  double dx = 0.0;
  double dy = 0.0;

  friend bool operator==(const Delta&, const Delta&) = default;
};

inline Point operator+(Point p, Delta d) { return {p.x + d.dx, p.y + d.dy}; }
inline Point operator-(Point p, Delta d) { return {p.x - d.dx, p.y - d.dy}; }
inline Delta operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Delta operator-(Delta d) { return {-d.dx, -d.dy}; }

// Axis-aligned rectangle, min corner inclusive to max corner inclusive.
struct Rect {
  Point min;
  Point max;

  [[nodiscard]] double width() const { return max.x - min.x; }
  [[nodiscard]] double height() const { return max.y - min.y; }
  [[nodiscard]] bool contains(Point p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  [[nodiscard]] Rect translated(Delta d) const { return {min + d, max + d}; }
  [[nodiscard]] Rect inflated(double by) const {
    return {{min.x - by, min.y - by}, {max.x + by, max.y + by}};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline double length(Delta d) { return std::hypot(d.dx, d.dy); }
inline double distance(Point a, Point b) { return length(a - b); }

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string("non-finite value for ") + what);
  }
}

inline void require_finite(Point p, const char* what = "point") {
  require_finite(p.x, what);
  require_finite(p.y, what);
}

inline void require_finite(Delta d, const char* what = "delta") {
  require_finite(d.dx, what);
  require_finite(d.dy, what);
}

inline void require_valid(const Rect& r, const char* what = "rect") {
  require_finite(r.min, what);
  require_finite(r.max, what);
  if (r.min.x > r.max.x || r.min.y > r.max.y) {
    throw ValidationError(std::string(what) + " has min corner beyond max corner");
  }
}

// Euclidean distance from p to the closed segment ab. A degenerate segment
// (a == b) is treated as the point a.
inline double segment_distance(Point p, Point a, Point b) {
  require_finite(p);
  require_finite(a);
  require_finite(b);
  // Canonical endpoint order makes the result bit-identical under swapping.
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
  const Delta ab = b - a;
  const double len2 = ab.dx * ab.dx + ab.dy * ab.dy;
  if (len2 == 0.0) return distance(p, a);
  const Delta ap = p - a;
  const double t = std::clamp((ap.dx * ab.dx + ap.dy * ab.dy) / len2, 0.0, 1.0);
  if (t == 0.0) return distance(p, a);
  if (t == 1.0) return distance(p, b);
  return distance(p, a + Delta{t * ab.dx, t * ab.dy});
}

// Closed disc test, boundary inclusive.
inline bool disc_contains(Point center, double radius, Point p) {
  require_finite(center);
  require_finite(p);
  require_finite(radius, "radius");
  if (radius < 0.0) throw ValidationError("negative disc radius");
  const Delta d = p - center;
  return d.dx * d.dx + d.dy * d.dy <= radius * radius;
}

// Even-odd containment with every boundary point counted as inside.
inline bool polygon_contains(std::span<const Point> vertices, Point p) {
  if (vertices.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
  require_finite(p);
  bool inside = false;
  for (std::size_t i = 0, j = vertices.size() - 1; i < vertices.size(); j = i++) {
    const Point a = vertices[j];
    const Point b = vertices[i];
    require_finite(b, "polygon vertex");
    // On-edge check: collinear and within the bounding box of the edge.
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross == 0.0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
        p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

// Twice the signed area (positive for counter-clockwise in y-up terms).
inline double signed_area2(std::span<const Point> vertices) {
  double acc = 0.0;
  for (std::size_t i = 0, j = vertices.size() - 1; i < vertices.size(); j = i++) {
    acc += vertices[j].x * vertices[i].y - vertices[i].x * vertices[j].y;
  }
  return acc;
}

namespace detail {

inline int orientation(Point a, Point b, Point c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment(Point a, Point b, Point p) {
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace detail

// Rejects polygons with fewer than 3 vertices, zero area, or crossing edges.
inline void require_simple_polygon(std::span<const Point> vertices, const char* what = "polygon") {
  if (vertices.size() < 3) {
    throw ValidationError(std::string(what) + " needs at least 3 vertices");
  }
  for (const Point& v : vertices) require_finite(v, what);
  if (signed_area2(vertices) == 0.0) {
    throw ValidationError(std::string(what) + " is degenerate (zero area)");
  }
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i] == vertices[(i + 1) % n]) {
      throw ValidationError(std::string(what) + " has a repeated vertex");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (detail::segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                                     vertices[(j + 1) % n])) {
        throw ValidationError(std::string(what) + " is self-intersecting");
      }
    }
  }
}

}  // namespace movable
