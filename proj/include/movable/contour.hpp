#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "movable/geometry.hpp"

namespace movable {

using NodeId = std::size_t;

// Hit shapes, all positioned relative to the owning node.
struct DiscShape {
  double radius = 5.0;
  friend bool operator==(const DiscShape&, const DiscShape&) = default;
};

struct BoxShape {
  double half_width = 4.0;
  double half_height = 4.0;
  friend bool operator==(const BoxShape&, const BoxShape&) = default;
};

struct PolygonShape {
  std::vector<Point> vertices;  // offsets from the node position
  friend bool operator==(const PolygonShape&, const PolygonShape&) = default;
};

using NodeShape = std::variant<DiscShape, BoxShape, PolygonShape>;

// How a node may be dragged on its own. `none` marks an empty node: it only
// anchors connections and never takes a hit.
enum class Freedom { free, horizontal_only, vertical_only, none };

struct Node {
  Point position;
  NodeShape shape = DiscShape{};
  Freedom freedom = Freedom::free;
  std::optional<Rect> clip;

  friend bool operator==(const Node&, const Node&) = default;
};

// Sensitive strip between two nodes; grabbing it moves the whole object.
struct Connection {
  NodeId node_a = 0;
  NodeId node_b = 0;
  double half_width = 3.0;

  friend bool operator==(const Connection&, const Connection&) = default;
};

// The sensitive skeleton of one object. Node ids are list indices.
struct Contour {
  std::vector<Node> nodes;
  std::vector<Connection> connections;

  friend bool operator==(const Contour&, const Contour&) = default;
};

struct NodeHit {
  NodeId id;
  friend bool operator==(const NodeHit&, const NodeHit&) = default;
};

struct ConnectionHit {
  std::size_t index;
  friend bool operator==(const ConnectionHit&, const ConnectionHit&) = default;
};

struct NoHit {
  friend bool operator==(const NoHit&, const NoHit&) = default;
};

using ContourHit = std::variant<NoHit, NodeHit, ConnectionHit>;

inline bool is_hit(const ContourHit& h) { return !std::holds_alternative<NoHit>(h); }

enum class Hint { none, reconfigure, move_object };

inline const char* to_string(Freedom f) {
  switch (f) {
    case Freedom::free: return "free";
    case Freedom::horizontal_only: return "horizontal_only";
    case Freedom::vertical_only: return "vertical_only";
    case Freedom::none: return "none";
  }
  return "?";
}

inline const char* to_string(Hint h) {
  switch (h) {
    case Hint::none: return "none";
    case Hint::reconfigure: return "reconfigure";
    case Hint::move_object: return "move_object";
  }
  return "?";
}

inline void validate(const NodeShape& shape) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DiscShape>) {
          require_finite(s.radius, "node radius");
          if (s.radius < 0.0) throw ValidationError("negative node radius");
        } else if constexpr (std::is_same_v<S, BoxShape>) {
          require_finite(s.half_width, "node half width");
          require_finite(s.half_height, "node half height");
          if (s.half_width < 0.0 || s.half_height < 0.0) {
            throw ValidationError("negative node box extent");
          }
        } else {
          require_simple_polygon(s.vertices, "node polygon");
        }
      },
      shape);
}

inline void validate(const Contour& c) {
  for (const Node& n : c.nodes) {
    require_finite(n.position, "node position");
    validate(n.shape);
    if (n.clip) {
      require_valid(*n.clip, "node clip");
      if (!n.clip->contains(n.position)) throw ValidationError("node lies outside its clip");
    }
  }
  for (const Connection& k : c.connections) {
    if (k.node_a >= c.nodes.size() || k.node_b >= c.nodes.size()) {
      throw ValidationError("connection references a missing node");
    }
    if (k.node_a == k.node_b) throw ValidationError("connection joins a node to itself");
    require_finite(k.half_width, "connection half width");
    if (k.half_width < 0.0) throw ValidationError("negative connection half width");
  }
}

inline bool shape_contains(const NodeShape& shape, Point center, Point p) {
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DiscShape>) {
          return disc_contains(center, s.radius, p);
        } else if constexpr (std::is_same_v<S, BoxShape>) {
          return std::abs(p.x - center.x) <= s.half_width &&
                 std::abs(p.y - center.y) <= s.half_height;
        } else {
          // Test in node-local coordinates so the stored offsets are used as-is.
          return polygon_contains(s.vertices, {p.x - center.x, p.y - center.y});
        }
      },
      shape);
}

// Nodes first (ascending id, empty nodes skipped), then connection strips
// (ascending index). Visibility of the overlay plays no part.
inline ContourHit hit_test(const Contour& c, Point p) {
  require_finite(p);
  for (NodeId id = 0; id < c.nodes.size(); ++id) {
    const Node& n = c.nodes[id];
    if (n.freedom == Freedom::none) continue;
    if (shape_contains(n.shape, n.position, p)) return NodeHit{id};
  }
  for (std::size_t i = 0; i < c.connections.size(); ++i) {
    const Connection& k = c.connections[i];
    if (segment_distance(p, c.nodes[k.node_a].position, c.nodes[k.node_b].position) <=
        k.half_width) {
      return ConnectionHit{i};
    }
  }
  return NoHit{};
}

inline Contour translate(Contour c, Delta d) {
  for (Node& n : c.nodes) {
    n.position = n.position + d;
    if (n.clip) n.clip = n.clip->translated(d);
  }
  return c;
}

// Applies the node's freedom axis, then clamps into its clip rectangle.
inline Point constrain_node(const Node& n, Point proposed) {
  Point out = proposed;
  switch (n.freedom) {
    case Freedom::free: break;
    case Freedom::horizontal_only: out.y = n.position.y; break;
    case Freedom::vertical_only: out.x = n.position.x; break;
    case Freedom::none: throw std::logic_error("constrain_node called on an empty node");
  }
  if (n.clip) {
    out.x = std::clamp(out.x, n.clip->min.x, n.clip->max.x);
    out.y = std::clamp(out.y, n.clip->min.y, n.clip->max.y);
  }
  return out;
}

inline Hint cursor_hint(const ContourHit& h) {
  if (std::holds_alternative<NodeHit>(h)) return Hint::reconfigure;
  if (std::holds_alternative<ConnectionHit>(h)) return Hint::move_object;
  return Hint::none;
}

}  // namespace movable
