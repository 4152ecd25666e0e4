#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "movable/mover.hpp"
#include "movable/shapes.hpp"

namespace movable {

using Scene = Mover<SceneObject>;

inline constexpr int kSceneVersion = 1;

// Base for everything that can go wrong reading a scene or script document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text; line and column are 1-based.
class ParseError : public FormatError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : FormatError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class UnknownTypeError : public FormatError {
 public:
  explicit UnknownTypeError(std::string tag)
      : FormatError("unknown object type \"" + tag + "\""), tag_(std::move(tag)) {}

  [[nodiscard]] const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

// Well-formed text that does not describe a valid scene (missing field, wrong
// type, geometry that fails validation).
class SchemaError : public FormatError {
 public:
  using FormatError::FormatError;
};

// ---------------------------------------------------------------------------
// Canonical number formatting.

// Shortest form with 9 significant digits; never "-0".
inline std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return {buf, res.ptr};
}

// Fixed three decimals for SVG coordinates; never "-0.000".
inline std::string format_fixed3(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  std::string out(buf, res.ptr);
  if (out == "-0.000") out = "0.000";
  return out;
}

namespace detail {

inline bool is_scalar(const nlohmann::json& j) { return !j.is_array() && !j.is_object(); }

inline void write_canonical(const nlohmann::json& j, std::string& out, int indent, bool pretty) {
  const auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(level) * 2, ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = !pretty || std::all_of(j.begin(), j.end(), is_scalar);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(indent + 1);
        write_canonical(e, out, indent + 1, pretty);
      }
      if (!flat) newline(indent);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += pretty ? "," : ", ";
        first = false;
        newline(indent + 1);
        out += nlohmann::json(key).dump();
        out += ": ";
        write_canonical(value, out, indent + 1, pretty);
      }
      newline(indent);
      out += '}';
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

// Sorted keys (nlohmann::json keeps objects in a std::map), 9-digit reals,
// two-space indentation, scalar arrays kept on one line.
inline std::string dump_canonical(const nlohmann::json& j) {
  std::string out;
  detail::write_canonical(j, out, 0, true);
  return out;
}

inline std::string dump_canonical_line(const nlohmann::json& j) {
  std::string out;
  detail::write_canonical(j, out, 0, false);
  return out;
}

// ---------------------------------------------------------------------------
// Object payloads <-> JSON.

namespace detail {

inline nlohmann::json to_json(Point p) { return nlohmann::json::array({p.x, p.y}); }

inline nlohmann::json to_json(const Rect& r) {
  return {{"x0", r.min.x}, {"y0", r.min.y}, {"x1", r.max.x}, {"y1", r.max.y}};
}

inline double real_at(const nlohmann::json& j, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw SchemaError("missing field \"" + std::string(key) + "\"");
  if (!it->is_number()) throw SchemaError("field \"" + std::string(key) + "\" must be a number");
  return it->get<double>();
}

inline double real_or(const nlohmann::json& j, std::string_view key, double fallback) {
  return j.contains(std::string(key)) ? real_at(j, key) : fallback;
}

inline std::uint64_t index_value(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw SchemaError(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline const nlohmann::json& field(const nlohmann::json& j, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw SchemaError("missing field \"" + std::string(key) + "\"");
  return *it;
}

inline std::vector<double> reals(const nlohmann::json& j, std::size_t arity, const char* what) {
  if (!j.is_array() || j.size() != arity) {
    throw SchemaError(std::string(what) + " must be an array of " + std::to_string(arity) + " numbers");
  }
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw SchemaError(std::string(what) + " must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline Point point_from(const nlohmann::json& j, const char* what = "point") {
  const auto v = reals(j, 2, what);
  return {v[0], v[1]};
}

inline Rect rect_from(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("rect must be an object with x0, y0, x1, y1");
  return {{real_at(j, "x0"), real_at(j, "y0")}, {real_at(j, "x1"), real_at(j, "y1")}};
}

inline const nlohmann::json& array_field(const nlohmann::json& j, std::string_view key) {
  const auto& a = field(j, key);
  if (!a.is_array()) throw SchemaError("field \"" + std::string(key) + "\" must be an array");
  return a;
}

}  // namespace detail

inline nlohmann::json params_to_json(const RectPlot& s) {
  return {{"area", detail::to_json(s.area())},
          {"margin", s.margin()},
          {"min_size", s.min_size()},
          {"node_radius", s.node_radius()},
          {"strip", s.strip()}};
}

inline nlohmann::json params_to_json(const ScaleStrip& s) {
  nlohmann::json j = {{"x0", s.x0()},
                      {"x1", s.x1()},
                      {"y", s.y()},
                      {"half_height", s.half_height()},
                      {"min_length", s.min_length()}};
  if (s.clip()) j["clip"] = detail::to_json(*s.clip());
  return j;
}

inline nlohmann::json params_to_json(const Skyscrapers& s) {
  nlohmann::json towers = nlohmann::json::array();
  for (const Tower& t : s.towers()) towers.push_back(nlohmann::json::array({t.x, t.y, t.height}));
  const auto& v = s.view();
  return {{"origin", detail::to_json(v.origin)},
          {"theta", v.theta},
          {"phi", v.phi},
          {"scale", v.scale},
          {"axis_len", v.axis_len},
          {"bar_size", s.bar_size()},
          {"strip", s.strip()},
          {"node_radius", s.node_radius()},
          {"towers", std::move(towers)}};
}

inline nlohmann::json params_to_json(const BallGraph& s) {
  nlohmann::json balls = nlohmann::json::array();
  for (const Ball& b : s.balls()) balls.push_back(nlohmann::json::array({b.center.x, b.center.y, b.radius}));
  nlohmann::json links = nlohmann::json::array();
  for (const Link& l : s.links()) links.push_back(nlohmann::json::array({l.a, l.b}));
  return {{"balls", std::move(balls)}, {"links", std::move(links)}, {"link_half_width", s.link_half_width()}};
}

inline nlohmann::json params_to_json(const Tile& s) {
  nlohmann::json verts = nlohmann::json::array();
  for (const Point& p : s.vertices()) verts.push_back(detail::to_json(p));
  return {{"vertices", std::move(verts)}, {"edge_half_width", s.edge_half_width()}};
}

inline nlohmann::json params_to_json(const GroupProxy& s) {
  return {{"rect", detail::to_json(s.rect())},
          {"payload", s.payload()},
          {"edge_half_width", s.edge_half_width()}};
}

// {"type": ..., "params": {...}}
inline nlohmann::json object_to_json(const SceneObject& obj) {
  return {{"type", std::string(obj.type_name())},
          {"params", std::visit([](const auto& s) { return params_to_json(s); }, obj.shape())}};
}

// Builds a shape from its tag and params. Optional params take the library
// defaults. Throws UnknownTypeError or SchemaError.
inline SceneObject object_from_json(const nlohmann::json& doc) {
  using detail::real_or;
  if (!doc.is_object()) throw SchemaError("object entry must be a JSON object");
  const auto& type_field = detail::field(doc, "type");
  if (!type_field.is_string()) throw SchemaError("field \"type\" must be a string");
  const std::string type = type_field.get<std::string>();
  const nlohmann::json params = doc.contains("params") ? doc.at("params") : nlohmann::json::object();
  if (!params.is_object()) throw SchemaError("field \"params\" must be an object");
  try {
    if (type == RectPlot::type_name) {
      return RectPlot(detail::rect_from(detail::field(params, "area")), real_or(params, "margin", kPlotMargin),
                      real_or(params, "min_size", kMinSize), real_or(params, "node_radius", kNodeRadius),
                      real_or(params, "strip", kStripHalfWidth));
    }
    if (type == ScaleStrip::type_name) {
      std::optional<Rect> clip;
      if (params.contains("clip")) clip = detail::rect_from(params.at("clip"));
      return ScaleStrip(detail::real_at(params, "x0"), detail::real_at(params, "x1"), detail::real_at(params, "y"),
                        real_or(params, "half_height", kStripHalfWidth), real_or(params, "min_length", kMinSize),
                        clip);
    }
    if (type == Skyscrapers::type_name) {
      Skyscrapers::View view;
      view.origin = detail::point_from(detail::field(params, "origin"), "origin");
      view.theta = detail::real_at(params, "theta");
      view.phi = detail::real_at(params, "phi");
      view.scale = detail::real_at(params, "scale");
      view.axis_len = detail::real_at(params, "axis_len");
      std::vector<Tower> towers;
      if (params.contains("towers")) {
        for (const auto& t : detail::array_field(params, "towers")) {
          const auto v = detail::reals(t, 3, "tower");
          towers.push_back({v[0], v[1], v[2]});
        }
      }
      return Skyscrapers(view, std::move(towers), real_or(params, "bar_size", 0.8),
                         real_or(params, "strip", kStripHalfWidth), real_or(params, "node_radius", kNodeRadius));
    }
    if (type == BallGraph::type_name) {
      std::vector<Ball> balls;
      if (params.contains("balls")) {
        for (const auto& b : detail::array_field(params, "balls")) {
          const auto v = detail::reals(b, 3, "ball");
          balls.push_back({{v[0], v[1]}, v[2]});
        }
      }
      std::vector<Link> links;
      if (params.contains("links")) {
        for (const auto& l : detail::array_field(params, "links")) {
          if (!l.is_array() || l.size() != 2) throw SchemaError("link must be a pair of ball indices");
          links.push_back({detail::index_value(l[0], "link endpoint"), detail::index_value(l[1], "link endpoint")});
        }
      }
      return BallGraph(std::move(balls), std::move(links), real_or(params, "link_half_width", kStripHalfWidth));
    }
    if (type == Tile::type_name) {
      std::vector<Point> verts;
      for (const auto& v : detail::array_field(params, "vertices")) verts.push_back(detail::point_from(v, "vertex"));
      return Tile(std::move(verts), real_or(params, "edge_half_width", kTileEdgeHalfWidth));
    }
    if (type == GroupProxy::type_name) {
      const std::uint64_t payload =
          params.contains("payload") ? detail::index_value(params.at("payload"), "payload") : 0;
      return GroupProxy(detail::rect_from(detail::field(params, "rect")), payload,
                        real_or(params, "edge_half_width", kStripHalfWidth));
    }
  } catch (const ValidationError& e) {
    throw SchemaError(type + ": " + e.what());
  }
  throw UnknownTypeError(type);
}

// ---------------------------------------------------------------------------
// Scene documents.

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte_pos) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte_pos > 0 ? byte_pos - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Parses JSON text, translating parser failures into ParseError. `line_base`
// shifts reported lines when the text is embedded in a larger file.
inline nlohmann::json parse_json(std::string_view text, std::size_t line_base = 0) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(line + line_base, column, msg);
  } catch (const nlohmann::json::out_of_range& e) {
    // Number overflow; the parser reports the token but not its offset.
    const std::string msg = e.what();
    const auto open = msg.find('\'');
    const auto close = msg.rfind('\'');
    std::size_t at = 0;
    if (open != std::string::npos && close > open) {
      const auto pos = text.find(msg.substr(open + 1, close - open - 1));
      if (pos != std::string_view::npos) at = pos + 1;
    }
    const auto [line, column] = line_column(text, at);
    throw ParseError(line + line_base, column, "number out of range");
  }
}

}  // namespace detail

inline nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& e : scene.entries()) {
    nlohmann::json o = object_to_json(e.object);
    o["id"] = e.id;
    objects.push_back(std::move(o));
  }
  return {{"version", kSceneVersion},
          {"contours_visible", scene.contours_visible()},
          {"next_id", scene.next_id()},
          {"objects", std::move(objects)}};
}

inline std::string save_scene(const Scene& scene) { return dump_canonical(scene_to_json(scene)) + "\n"; }

inline Scene scene_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("scene document must be a JSON object");
  const auto& version = detail::field(doc, "version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kSceneVersion) {
    throw SchemaError("unsupported scene version (expected 1)");
  }
  Scene scene;
  if (doc.contains("contours_visible")) {
    if (!doc.at("contours_visible").is_boolean()) throw SchemaError("contours_visible must be a boolean");
    scene.set_contours_visible(doc.at("contours_visible").get<bool>());
  }
  std::size_t index = 0;
  for (const auto& o : detail::array_field(doc, "objects")) {
    const std::string where = "objects[" + std::to_string(index++) + "]";
    try {
      const MovableId id = detail::index_value(detail::field(o, "id"), "id");
      scene.restore(id, object_from_json(o));
    } catch (const UnknownTypeError&) {
      throw;
    } catch (const FormatError& e) {
      throw SchemaError(where + ": " + e.what());
    } catch (const ValidationError& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  if (doc.contains("next_id")) {
    const MovableId next = detail::index_value(doc.at("next_id"), "next_id");
    if (next < scene.next_id()) throw SchemaError("next_id must exceed every object id");
    scene.reserve_ids(next);
  }
  return scene;
}

inline Scene load_scene(std::string_view text) { return scene_from_json(detail::parse_json(text)); }

}  // namespace movable
