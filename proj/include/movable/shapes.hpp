#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "movable/contour.hpp"
#include "movable/mover.hpp"

namespace movable {

// Default handle sizes, in px.
inline constexpr double kNodeRadius = 5.0;
inline constexpr double kStripHalfWidth = 3.0;
inline constexpr double kPlotMargin = 6.0;
inline constexpr double kMinSize = 20.0;
inline constexpr double kTileEdgeHalfWidth = 2.0;

namespace detail {

inline void require_non_negative(double v, const char* what) {
  require_finite(v, what);
  if (v < 0.0) throw ValidationError(std::string(what) + " must be >= 0");
}

inline void require_positive(double v, const char* what) {
  require_finite(v, what);
  if (!(v > 0.0)) throw ValidationError(std::string(what) + " must be > 0");
}

// Spans rebuilt from serialized (9 significant digit) coordinates may fall
// short of a minimum by rounding; construction accepts that much slack.
inline bool span_at_least(double lo, double hi, double min_span) {
  const double magnitude = std::max({1.0, std::abs(lo), std::abs(hi)});
  return hi - lo >= min_span - 1e-8 * magnitude;
}

// Pulls `lo` down (or `hi` up) by whole ulps until hi - lo >= min_span.
inline double widen_low(double lo, double hi, double min_span) {
  while (hi - lo < min_span) lo = std::nextafter(lo, -HUGE_VAL);
  return lo;
}

inline double widen_high(double lo, double hi, double min_span) {
  while (hi - lo < min_span) hi = std::nextafter(hi, HUGE_VAL);
  return hi;
}

inline std::vector<Connection> ring(std::size_t n, double half_width) {
  std::vector<Connection> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({i, (i + 1) % n, half_width});
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// RectPlot: an XY plot whose contour runs slightly outside the plotting area.
// Nodes: 0..3 corners (TL, TR, BR, BL), 4..7 mid-edges (top, right, bottom,
// left). The interior stays insensitive so other clicks can use it.
class RectPlot {
 public:
  static constexpr std::string_view type_name = "rect_plot";

  explicit RectPlot(Rect area, double margin = kPlotMargin, double min_size = kMinSize,
                    double node_radius = kNodeRadius, double strip = kStripHalfWidth)
      : area_(area), margin_(margin), min_size_(min_size), node_radius_(node_radius), strip_(strip) {
    require_valid(area_, "plot area");
    detail::require_non_negative(margin_, "plot margin");
    detail::require_non_negative(min_size_, "plot min_size");
    detail::require_non_negative(node_radius_, "plot node radius");
    detail::require_non_negative(strip_, "plot strip");
    if (!detail::span_at_least(area_.min.x, area_.max.x, min_size_) ||
        !detail::span_at_least(area_.min.y, area_.max.y, min_size_)) {
      throw ValidationError("plot area smaller than min_size");
    }
  }

  [[nodiscard]] const Rect& area() const { return area_; }
  [[nodiscard]] double margin() const { return margin_; }
  [[nodiscard]] double min_size() const { return min_size_; }
  [[nodiscard]] double node_radius() const { return node_radius_; }
  [[nodiscard]] double strip() const { return strip_; }
  [[nodiscard]] Rect frame() const { return area_.inflated(margin_); }

  [[nodiscard]] Contour contour() const {
    const Rect f = frame();
    const double cx = (f.min.x + f.max.x) / 2.0;
    const double cy = (f.min.y + f.max.y) / 2.0;
    const DiscShape disc{node_radius_};
    Contour c;
    c.nodes = {
        {{f.min.x, f.min.y}, disc, Freedom::free, std::nullopt},
        {{f.max.x, f.min.y}, disc, Freedom::free, std::nullopt},
        {{f.max.x, f.max.y}, disc, Freedom::free, std::nullopt},
        {{f.min.x, f.max.y}, disc, Freedom::free, std::nullopt},
        {{cx, f.min.y}, disc, Freedom::vertical_only, std::nullopt},
        {{f.max.x, cy}, disc, Freedom::horizontal_only, std::nullopt},
        {{cx, f.max.y}, disc, Freedom::vertical_only, std::nullopt},
        {{f.min.x, cy}, disc, Freedom::horizontal_only, std::nullopt},
    };
    c.connections = detail::ring(4, strip_);
    return c;
  }

  void on_translate(Delta d) { area_ = area_.translated(d); }

  // Corner drags keep the opposite corner; mid-edge drags move one edge.
  // Each axis is clamped to min_size.
  Point on_node_move(NodeId id, Point p) {
    const bool left = id == 0 || id == 3 || id == 7;
    const bool right = id == 1 || id == 2 || id == 5;
    const bool top = id == 0 || id == 1 || id == 4;
    const bool bottom = id == 2 || id == 3 || id == 6;
    if (id > 7) throw ValidationError("rect plot has no node " + std::to_string(id));
    Rect& a = area_;
    if (left) {
      a.min.x = detail::widen_low(std::min(p.x + margin_, a.max.x - min_size_), a.max.x, min_size_);
    }
    if (right) {
      a.max.x = detail::widen_high(a.min.x, std::max(p.x - margin_, a.min.x + min_size_), min_size_);
    }
    if (top) {
      a.min.y = detail::widen_low(std::min(p.y + margin_, a.max.y - min_size_), a.max.y, min_size_);
    }
    if (bottom) {
      a.max.y = detail::widen_high(a.min.y, std::max(p.y - margin_, a.min.y + min_size_), min_size_);
    }
    return contour().nodes[id].position;
  }

  friend bool operator==(const RectPlot&, const RectPlot&) = default;

 private:
  Rect area_;
  double margin_;
  double min_size_;
  double node_radius_;
  double strip_;
};

// ---------------------------------------------------------------------------
// ScaleStrip: a horizontal scale that can be stretched along x only.
class ScaleStrip {
 public:
  static constexpr std::string_view type_name = "scale_strip";

  ScaleStrip(double x0, double x1, double y, double half_height = kStripHalfWidth,
             double min_length = kMinSize, std::optional<Rect> clip = std::nullopt)
      : x0_(x0), x1_(x1), y_(y), half_height_(half_height), min_length_(min_length), clip_(clip) {
    require_finite(x0_, "scale x0");
    require_finite(x1_, "scale x1");
    require_finite(y_, "scale y");
    detail::require_non_negative(half_height_, "scale half_height");
    detail::require_non_negative(min_length_, "scale min_length");
    if (!detail::span_at_least(x0_, x1_, min_length_)) throw ValidationError("scale shorter than min_length");
    if (clip_) {
      require_valid(*clip_, "scale clip");
      if (!clip_->contains({x0_, y_}) || !clip_->contains({x1_, y_})) {
        throw ValidationError("scale end lies outside its clip");
      }
    }
  }

  [[nodiscard]] double x0() const { return x0_; }
  [[nodiscard]] double x1() const { return x1_; }
  [[nodiscard]] double y() const { return y_; }
  [[nodiscard]] double half_height() const { return half_height_; }
  [[nodiscard]] double min_length() const { return min_length_; }
  [[nodiscard]] const std::optional<Rect>& clip() const { return clip_; }

  [[nodiscard]] Contour contour() const {
    const BoxShape box{4.0, std::max(half_height_, 4.0)};
    Contour c;
    c.nodes = {
        {{x0_, y_}, box, Freedom::horizontal_only, clip_},
        {{x1_, y_}, box, Freedom::horizontal_only, clip_},
    };
    c.connections = {{0, 1, half_height_}};
    return c;
  }

  void on_translate(Delta d) {
    x0_ += d.dx;
    x1_ += d.dx;
    y_ += d.dy;
    if (clip_) clip_ = clip_->translated(d);
  }

  Point on_node_move(NodeId id, Point p) {
    if (id == 0) {
      x0_ = detail::widen_low(std::min(p.x, x1_ - min_length_), x1_, min_length_);
    } else if (id == 1) {
      x1_ = detail::widen_high(x0_, std::max(p.x, x0_ + min_length_), min_length_);
    } else {
      throw ValidationError("scale strip has no node " + std::to_string(id));
    }
    // The clip outranks the length floor when rounding leaves them at odds.
    if (clip_) {
      x0_ = std::clamp(x0_, clip_->min.x, clip_->max.x);
      x1_ = std::clamp(x1_, clip_->min.x, clip_->max.x);
    }
    return contour().nodes[id].position;
  }

  friend bool operator==(const ScaleStrip&, const ScaleStrip&) = default;

 private:
  double x0_;
  double x1_;
  double y_;
  double half_height_;
  double min_length_;
  std::optional<Rect> clip_;
};

// ---------------------------------------------------------------------------
// Skyscrapers: 3D bar chart under an orthographic view with azimuth theta and
// elevation phi. Contour: node 0 at the projected origin, nodes 1..3 at the
// projected ends of the X, Y and Z axes, joined to node 0 by strips.
struct Tower {
  double x = 0.0;
  double y = 0.0;
  double height = 0.0;

  friend bool operator==(const Tower&, const Tower&) = default;
};

struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

class Skyscrapers {
 public:
  static constexpr std::string_view type_name = "skyscrapers";
  // Elevation drags stop short of a straight-down view so the Z handle never
  // collapses onto the origin handle.
  static constexpr double kMaxDragElevation = std::numbers::pi / 2.0 - 0.2;
  static constexpr double kRadiusEpsilon = 1e-9;

  struct View {
    Point origin;
    double theta = 0.0;
    double phi = 0.0;
    double scale = 1.0;
    double axis_len = 10.0;

    friend bool operator==(const View&, const View&) = default;
  };

  explicit Skyscrapers(View view, std::vector<Tower> towers = {}, double bar_size = 0.8,
                       double strip = kStripHalfWidth, double node_radius = kNodeRadius)
      : view_(view), towers_(std::move(towers)), bar_size_(bar_size), strip_(strip),
        node_radius_(node_radius) {
    require_finite(view_.origin, "skyscrapers origin");
    require_finite(view_.theta, "skyscrapers theta");
    require_finite(view_.phi, "skyscrapers phi");
    detail::require_positive(view_.scale, "skyscrapers scale");
    detail::require_positive(view_.axis_len, "skyscrapers axis_len");
    if (view_.phi < 0.0 || view_.phi > std::numbers::pi / 2.0) {
      throw ValidationError("skyscrapers phi outside [0, pi/2]");
    }
    detail::require_positive(bar_size_, "skyscrapers bar_size");
    detail::require_non_negative(strip_, "skyscrapers strip");
    detail::require_non_negative(node_radius_, "skyscrapers node radius");
    for (const Tower& t : towers_) {
      require_finite(t.x, "tower x");
      require_finite(t.y, "tower y");
      detail::require_non_negative(t.height, "tower height");
    }
  }

  [[nodiscard]] const View& view() const { return view_; }
  [[nodiscard]] const std::vector<Tower>& towers() const { return towers_; }
  [[nodiscard]] double bar_size() const { return bar_size_; }
  [[nodiscard]] double strip() const { return strip_; }
  [[nodiscard]] double node_radius() const { return node_radius_; }

  [[nodiscard]] Point project(WorldPoint w) const {
    const double ct = std::cos(view_.theta);
    const double st = std::sin(view_.theta);
    const double u = view_.origin.x + view_.scale * (w.x * ct - w.y * st);
    const double v = view_.origin.y -
                     view_.scale * ((w.x * st + w.y * ct) * std::sin(view_.phi) + w.z * std::cos(view_.phi));
    return {u, v};
  }

  // Distance from the viewer along the ground plane; larger is farther.
  [[nodiscard]] double depth(double x, double y) const {
    return x * std::sin(view_.theta) + y * std::cos(view_.theta);
  }

  [[nodiscard]] Contour contour() const {
    const double len = view_.axis_len;
    const DiscShape disc{node_radius_};
    Contour c;
    c.nodes = {
        {project({0, 0, 0}), disc, Freedom::free, std::nullopt},
        {project({len, 0, 0}), disc, Freedom::free, std::nullopt},
        {project({0, len, 0}), disc, Freedom::free, std::nullopt},
        {project({0, 0, len}), disc, Freedom::free, std::nullopt},
    };
    c.connections = {{0, 1, strip_}, {0, 2, strip_}, {0, 3, strip_}};
    return c;
  }

  // Back-to-front tower indices; equal depths keep ascending index.
  [[nodiscard]] std::vector<std::size_t> paint_order() const {
    std::vector<double> depths;
    depths.reserve(towers_.size());
    for (const Tower& t : towers_) depths.push_back(depth(t.x, t.y));
    std::vector<std::size_t> order(towers_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return depths[a] > depths[b]; });
    return order;
  }

  void on_translate(Delta d) { view_.origin = view_.origin + d; }

  // Node 0 moves the whole plot. Axis ends turn about node 0 by the change in
  // their screen angle (X/Y ends drive theta, the Z end drives phi) and scale
  // by the change in their screen distance. A drag through node 0 changes
  // nothing for that event.
  Point on_node_move(NodeId id, Point p) {
    if (id > 3) throw ValidationError("skyscrapers has no node " + std::to_string(id));
    if (id == 0) {
      view_.origin = p;
      return contour().nodes[0].position;
    }
    const Contour before = contour();
    const Point center = before.nodes[0].position;
    const Point old_pos = before.nodes[id].position;
    const double r_old = distance(old_pos, center);
    const double r_new = distance(p, center);
    if (r_old <= kRadiusEpsilon || r_new <= kRadiusEpsilon) return old_pos;
    const double turn = angle_between(screen_angle(center, old_pos), screen_angle(center, p));
    if (id == 3) {
      view_.phi = std::clamp(view_.phi + turn, 0.0, kMaxDragElevation);
    } else {
      view_.theta += turn;
    }
    view_.scale *= r_new / r_old;
    return contour().nodes[id].position;
  }

  // Counter-clockwise angle on screen (y flipped to point up).
  static double screen_angle(Point center, Point p) { return std::atan2(center.y - p.y, p.x - center.x); }

  // b - a wrapped into (-pi, pi].
  static double angle_between(double a, double b) {
    double d = std::remainder(b - a, 2.0 * std::numbers::pi);
    if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
  }

  friend bool operator==(const Skyscrapers&, const Skyscrapers&) = default;

 private:
  View view_;
  std::vector<Tower> towers_;
  double bar_size_;
  double strip_;
  double node_radius_;
};

// ---------------------------------------------------------------------------
// BallGraph: balls joined by links; the contour mirrors the graph.
struct Ball {
  Point center;
  double radius = kNodeRadius;

  friend bool operator==(const Ball&, const Ball&) = default;
};

struct Link {
  std::size_t a = 0;
  std::size_t b = 0;

  friend bool operator==(const Link&, const Link&) = default;
};

class BallGraph {
 public:
  static constexpr std::string_view type_name = "ball_graph";

  BallGraph() = default;
  BallGraph(std::vector<Ball> balls, std::vector<Link> links, double link_half_width = kStripHalfWidth)
      : link_half_width_(link_half_width) {
    detail::require_non_negative(link_half_width_, "ball link half width");
    for (const Ball& b : balls) add_ball(b.center, b.radius);
    for (const Link& l : links) add_link(l.a, l.b);
  }

  [[nodiscard]] const std::vector<Ball>& balls() const { return balls_; }
  [[nodiscard]] const std::vector<Link>& links() const { return links_; }
  [[nodiscard]] double link_half_width() const { return link_half_width_; }

  std::size_t add_ball(Point center, double radius) {
    require_finite(center, "ball center");
    detail::require_non_negative(radius, "ball radius");
    balls_.push_back({center, radius});
    return balls_.size() - 1;
  }

  void add_link(std::size_t a, std::size_t b) {
    if (a >= balls_.size() || b >= balls_.size()) throw ValidationError("link references a missing ball");
    if (a == b) throw ValidationError("link joins a ball to itself");
    links_.push_back({a, b});
  }

  // Drops the ball and every link touching it; later indices shift down.
  void remove_ball(std::size_t index) {
    if (index >= balls_.size()) throw ValidationError("no ball " + std::to_string(index));
    balls_.erase(balls_.begin() + static_cast<std::ptrdiff_t>(index));
    std::erase_if(links_, [&](const Link& l) { return l.a == index || l.b == index; });
    for (Link& l : links_) {
      if (l.a > index) --l.a;
      if (l.b > index) --l.b;
    }
  }

  [[nodiscard]] Contour contour() const {
    Contour c;
    c.nodes.reserve(balls_.size());
    for (const Ball& b : balls_) c.nodes.push_back({b.center, DiscShape{b.radius}, Freedom::free, std::nullopt});
    c.connections.reserve(links_.size());
    for (const Link& l : links_) c.connections.push_back({l.a, l.b, link_half_width_});
    return c;
  }

  void on_translate(Delta d) {
    for (Ball& b : balls_) b.center = b.center + d;
  }

  Point on_node_move(NodeId id, Point p) {
    if (id >= balls_.size()) throw ValidationError("no ball " + std::to_string(id));
    balls_[id].center = p;
    return p;
  }

  friend bool operator==(const BallGraph&, const BallGraph&) = default;

 private:
  std::vector<Ball> balls_;
  std::vector<Link> links_;
  double link_half_width_ = kStripHalfWidth;
};

// ---------------------------------------------------------------------------
// Tile: polygonal game piece, movable by its edges, never resizable.
class Tile {
 public:
  static constexpr std::string_view type_name = "tile";

  explicit Tile(std::vector<Point> vertices, double edge_half_width = kTileEdgeHalfWidth)
      : vertices_(std::move(vertices)), edge_half_width_(edge_half_width) {
    require_simple_polygon(vertices_, "tile");
    detail::require_non_negative(edge_half_width_, "tile edge half width");
  }

  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] double edge_half_width() const { return edge_half_width_; }

  [[nodiscard]] Contour contour() const {
    Contour c;
    c.nodes.reserve(vertices_.size());
    for (const Point& v : vertices_) c.nodes.push_back({v, DiscShape{0.0}, Freedom::none, std::nullopt});
    c.connections = detail::ring(vertices_.size(), edge_half_width_);
    return c;
  }

  void on_translate(Delta d) {
    for (Point& v : vertices_) v = v + d;
  }

  Point on_node_move(NodeId, Point) { throw std::logic_error("tile nodes are empty and cannot be moved"); }

  friend bool operator==(const Tile&, const Tile&) = default;

 private:
  std::vector<Point> vertices_;
  double edge_half_width_;
};

// ---------------------------------------------------------------------------
// GroupProxy: one movable frame standing in for a group of controls. The
// payload lets a UI find the real controls to move along with it.
class GroupProxy {
 public:
  static constexpr std::string_view type_name = "group_proxy";

  explicit GroupProxy(Rect rect, std::uint64_t payload = 0, double edge_half_width = kStripHalfWidth)
      : rect_(rect), payload_(payload), edge_half_width_(edge_half_width) {
    require_valid(rect_, "group rect");
    detail::require_non_negative(edge_half_width_, "group edge half width");
  }

  [[nodiscard]] const Rect& rect() const { return rect_; }
  [[nodiscard]] std::uint64_t payload() const { return payload_; }
  [[nodiscard]] double edge_half_width() const { return edge_half_width_; }

  [[nodiscard]] Contour contour() const {
    const Rect& r = rect_;
    Contour c;
    for (const Point& p : {r.min, Point{r.max.x, r.min.y}, r.max, Point{r.min.x, r.max.y}}) {
      c.nodes.push_back({p, DiscShape{0.0}, Freedom::none, std::nullopt});
    }
    c.connections = detail::ring(4, edge_half_width_);
    return c;
  }

  void on_translate(Delta d) { rect_ = rect_.translated(d); }

  Point on_node_move(NodeId, Point) { throw std::logic_error("group proxy nodes are empty and cannot be moved"); }

  friend bool operator==(const GroupProxy&, const GroupProxy&) = default;

 private:
  Rect rect_;
  std::uint64_t payload_;
  double edge_half_width_;
};

// ---------------------------------------------------------------------------
// Any of the families above, as held by a scene.
using ShapeVariant = std::variant<RectPlot, ScaleStrip, Skyscrapers, BallGraph, Tile, GroupProxy>;

class SceneObject {
 public:
  template <typename S>
    requires std::is_constructible_v<ShapeVariant, S>
  SceneObject(S shape) : shape_(std::move(shape)) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] Contour contour() const {
    return std::visit([](const auto& s) { return s.contour(); }, shape_);
  }
  void on_translate(Delta d) {
    std::visit([&](auto& s) { s.on_translate(d); }, shape_);
  }
  Point on_node_move(NodeId id, Point p) {
    return std::visit([&](auto& s) { return s.on_node_move(id, p); }, shape_);
  }

  [[nodiscard]] std::string_view type_name() const {
    return std::visit([](const auto& s) { return std::decay_t<decltype(s)>::type_name; }, shape_);
  }

  [[nodiscard]] const ShapeVariant& shape() const { return shape_; }
  template <typename S>
  [[nodiscard]] const S* get_if() const {
    return std::get_if<S>(&shape_);
  }

  friend bool operator==(const SceneObject&, const SceneObject&) = default;

 private:
  ShapeVariant shape_;
};

static_assert(MovableBehavior<SceneObject>);

}  // namespace movable
