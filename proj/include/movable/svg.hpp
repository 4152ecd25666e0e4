#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "movable/scene_io.hpp"

namespace movable {

struct SvgOptions {
  int width = 1024;
  int height = 768;
};

namespace detail {

// Appends attributes in the order given; callers keep that order fixed.
class SvgWriter {
 public:
  explicit SvgWriter(std::string& out) : out_(out) {}

  void open_group(std::string_view cls, std::string_view id) {
    out_ += "<g class=\"";
    out_ += cls;
    out_ += "\" id=\"";
    out_ += id;
    out_ += "\">\n";
  }
  void close_group() { out_ += "</g>\n"; }

  void rect(const Rect& r, std::string_view fill, std::string_view stroke, double stroke_width) {
    out_ += "<rect x=\"" + format_fixed3(r.min.x) + "\" y=\"" + format_fixed3(r.min.y) + "\" width=\"" +
            format_fixed3(r.width()) + "\" height=\"" + format_fixed3(r.height()) + "\"";
    paint(fill, stroke, stroke_width);
    out_ += "/>\n";
  }

  void circle(Point c, double r, std::string_view fill, std::string_view stroke, double stroke_width) {
    out_ += "<circle cx=\"" + format_fixed3(c.x) + "\" cy=\"" + format_fixed3(c.y) + "\" r=\"" + format_fixed3(r) +
            "\"";
    paint(fill, stroke, stroke_width);
    out_ += "/>\n";
  }

  void line(Point a, Point b, std::string_view stroke, double stroke_width, std::string_view extra = {}) {
    out_ += "<line x1=\"" + format_fixed3(a.x) + "\" y1=\"" + format_fixed3(a.y) + "\" x2=\"" + format_fixed3(b.x) +
            "\" y2=\"" + format_fixed3(b.y) + "\" stroke=\"";
    out_ += stroke;
    out_ += "\" stroke-width=\"" + format_fixed3(stroke_width) + "\"";
    out_ += extra;
    out_ += "/>\n";
  }

  void polygon(const std::vector<Point>& pts, std::string_view fill, std::string_view stroke, double stroke_width,
               std::string_view extra = {}) {
    out_ += "<polygon points=\"" + points(pts) + "\"";
    paint(fill, stroke, stroke_width);
    out_ += extra;
    out_ += "/>\n";
  }

  void path(const std::vector<Point>& pts, std::string_view stroke, double stroke_width) {
    out_ += "<path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ += i == 0 ? "M" : " L";
      out_ += format_fixed3(pts[i].x) + " " + format_fixed3(pts[i].y);
    }
    out_ += "\" fill=\"none\" stroke=\"";
    out_ += stroke;
    out_ += "\" stroke-width=\"" + format_fixed3(stroke_width) + "\"/>\n";
  }

 private:
  static std::string points(const std::vector<Point>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) s += ' ';
      s += format_fixed3(pts[i].x) + "," + format_fixed3(pts[i].y);
    }
    return s;
  }

  void paint(std::string_view fill, std::string_view stroke, double stroke_width) {
    out_ += " fill=\"";
    out_ += fill;
    out_ += "\" stroke=\"";
    out_ += stroke;
    out_ += "\" stroke-width=\"" + format_fixed3(stroke_width) + "\"";
  }

  std::string& out_;
};

// Andrew's monotone chain; returns the hull counter-clockwise without repeats.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  const auto cross = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline constexpr std::array<std::string_view, 6> kTowerColors = {"#4e79a7", "#f28e2b", "#e15759",
                                                                 "#76b7b2", "#59a14f", "#edc948"};

inline void draw_body(SvgWriter& w, const RectPlot& s) {
  const Rect& a = s.area();
  w.rect(a, "#ffffff", "#333333", 1.0);
  // Decorative sample curve; real plotting belongs to the host application.
  std::vector<Point> curve;
  constexpr int kSamples = 32;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    curve.push_back({a.min.x + t * a.width(),
                     a.min.y + a.height() * (0.5 - 0.35 * std::sin(2.0 * std::numbers::pi * t))});
  }
  w.path(curve, "#1f77b4", 1.5);
}

inline void draw_body(SvgWriter& w, const ScaleStrip& s) {
  w.line({s.x0(), s.y()}, {s.x1(), s.y()}, "#333333", 1.5);
  constexpr int kTicks = 10;
  for (int i = 0; i <= kTicks; ++i) {
    const double x = s.x0() + (s.x1() - s.x0()) * i / kTicks;
    const double h = i % 5 == 0 ? s.half_height() + 3.0 : s.half_height();
    w.line({x, s.y() - h}, {x, s.y() + h}, "#333333", 1.0);
  }
}

inline void draw_body(SvgWriter& w, const Skyscrapers& s) {
  const double len = s.view().axis_len;
  const Point o = s.project({0, 0, 0});
  w.line(o, s.project({len, 0, 0}), "#555555", 1.0);
  w.line(o, s.project({0, len, 0}), "#555555", 1.0);
  w.line(o, s.project({0, 0, len}), "#555555", 1.0);
  const double half = s.bar_size() / 2.0;
  for (const std::size_t i : s.paint_order()) {
    const Tower& t = s.towers()[i];
    std::vector<Point> corners;
    std::vector<Point> top;
    for (const bool upper : {false, true}) {
      for (const auto& [dx, dy] : {std::pair{-half, -half}, {half, -half}, {half, half}, {-half, half}}) {
        const Point p = s.project({t.x + dx, t.y + dy, upper ? t.height : 0.0});
        corners.push_back(p);
        if (upper) top.push_back(p);
      }
    }
    const std::string_view color = kTowerColors[i % kTowerColors.size()];
    const std::string tag = " data-tower=\"" + std::to_string(i) + "\"";
    w.polygon(convex_hull(corners), color, "#222222", 0.5, tag);
    w.polygon(top, "#ffffff", "#222222", 0.5, tag);
  }
}

inline void draw_body(SvgWriter& w, const BallGraph& s) {
  for (const Link& l : s.links()) w.line(s.balls()[l.a].center, s.balls()[l.b].center, "#777777", 2.0);
  for (const Ball& b : s.balls()) w.circle(b.center, b.radius, "#c0504d", "#7f2a28", 1.0);
}

inline void draw_body(SvgWriter& w, const Tile& s) { w.polygon(s.vertices(), "#9bbb59", "#4f6228", 1.0); }

inline void draw_body(SvgWriter& w, const GroupProxy& s) { w.rect(s.rect(), "#eeeeee", "#888888", 1.0); }

inline void draw_contour(SvgWriter& w, const Contour& c) {
  for (const Connection& k : c.connections) {
    w.line(c.nodes[k.node_a].position, c.nodes[k.node_b].position, "#ff0000", std::max(2.0 * k.half_width, 1.0),
           " stroke-opacity=\"0.35\"");
  }
  for (const Node& n : c.nodes) {
    if (n.freedom == Freedom::none) {
      w.circle(n.position, 2.0, "#ff0000", "none", 0.0);
      continue;
    }
    std::visit(
        [&](const auto& shape) {
          using S = std::decay_t<decltype(shape)>;
          if constexpr (std::is_same_v<S, DiscShape>) {
            w.circle(n.position, shape.radius, "none", "#0000ff", 1.0);
          } else if constexpr (std::is_same_v<S, BoxShape>) {
            w.rect({{n.position.x - shape.half_width, n.position.y - shape.half_height},
                    {n.position.x + shape.half_width, n.position.y + shape.half_height}},
                   "none", "#0000ff", 1.0);
          } else {
            std::vector<Point> pts;
            for (const Point& v : shape.vertices) pts.push_back({n.position.x + v.x, n.position.y + v.y});
            w.polygon(pts, "none", "#0000ff", 1.0);
          }
        },
        n.shape);
  }
}

}  // namespace detail

// Bodies in painter order, each followed by its contour overlay when
// contours are visible. Output depends only on the scene.
inline std::string render_svg(const Scene& scene, const SvgOptions& opts = {}) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  const std::string w = std::to_string(opts.width);
  const std::string h = std::to_string(opts.height);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + h +
         "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  detail::SvgWriter writer(out);
  for (const auto& e : scene.entries()) {
    const std::string id = std::to_string(e.id);
    writer.open_group("body " + std::string(e.object.type_name()), "object-" + id);
    std::visit([&](const auto& s) { detail::draw_body(writer, s); }, e.object.shape());
    writer.close_group();
    if (scene.contours_visible()) {
      writer.open_group("contour", "contour-" + id);
      detail::draw_contour(writer, e.object.contour());
      writer.close_group();
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace movable
