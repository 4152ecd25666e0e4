#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "movable/scene_io.hpp"

namespace movable {

// Line-oriented pointer script:
//   down X Y | move X Y | up | add {object json} | remove ID | toggle_contours
// Blank lines and lines starting with '#' are skipped.
namespace event {

struct Down {
  Point at;
  friend bool operator==(const Down&, const Down&) = default;
};
struct Move {
  Point at;
  friend bool operator==(const Move&, const Move&) = default;
};
struct Up {
  friend bool operator==(const Up&, const Up&) = default;
};
struct Add {
  SceneObject object;
  friend bool operator==(const Add&, const Add&) = default;
};
struct Remove {
  MovableId id;
  friend bool operator==(const Remove&, const Remove&) = default;
};
struct ToggleContours {
  friend bool operator==(const ToggleContours&, const ToggleContours&) = default;
};

}  // namespace event

using ScriptEvent =
    std::variant<event::Down, event::Move, event::Up, event::Add, event::Remove, event::ToggleContours>;
using EventScript = std::vector<ScriptEvent>;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline double parse_coord(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(line, 1, "expected a finite number, got \"" + std::string(tok) + "\"");
  }
  return v;
}

}  // namespace detail

inline EventScript parse_script(std::string_view text) {
  EventScript out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto toks = detail::split_ws(line);
    if (toks.empty() || toks.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view verb = toks.front();
    const auto arity = [&](std::size_t n) {
      if (toks.size() != n + 1) {
        throw ParseError(line_no, 1,
                         "\"" + std::string(verb) + "\" takes " + std::to_string(n) + " argument(s), got " +
                             std::to_string(toks.size() - 1));
      }
    };
    if (verb == "down" || verb == "move") {
      arity(2);
      const Point p{detail::parse_coord(toks[1], line_no), detail::parse_coord(toks[2], line_no)};
      if (verb == "down") {
        out.emplace_back(event::Down{p});
      } else {
        out.emplace_back(event::Move{p});
      }
    } else if (verb == "up") {
      arity(0);
      out.emplace_back(event::Up{});
    } else if (verb == "toggle_contours") {
      arity(0);
      out.emplace_back(event::ToggleContours{});
    } else if (verb == "remove") {
      arity(1);
      std::uint64_t id = 0;
      const auto tok = toks[1];
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, 1, "expected an object id, got \"" + std::string(tok) + "\"");
      }
      out.emplace_back(event::Remove{id});
    } else if (verb == "add") {
      const std::size_t json_start = line.find(verb) + verb.size();
      const std::string_view doc = line.substr(json_start);
      if (detail::split_ws(doc).empty()) throw ParseError(line_no, 1, "\"add\" needs an object document");
      try {
        out.emplace_back(event::Add{object_from_json(detail::parse_json(doc))});
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.column() + json_start, e.message());
      } catch (const FormatError& e) {
        throw ParseError(line_no, json_start + 1, e.what());
      }
    } else {
      throw ParseError(line_no, 1, "unknown event \"" + std::string(verb) + "\"");
    }
    if (end == text.size()) break;
  }
  return out;
}

inline std::string format_event(const ScriptEvent& ev) {
  return std::visit(
      [](const auto& e) -> std::string {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::Down>) {
          return "down " + format_real(e.at.x) + " " + format_real(e.at.y);
        } else if constexpr (std::is_same_v<E, event::Move>) {
          return "move " + format_real(e.at.x) + " " + format_real(e.at.y);
        } else if constexpr (std::is_same_v<E, event::Up>) {
          return "up";
        } else if constexpr (std::is_same_v<E, event::Add>) {
          return "add " + dump_canonical_line(object_to_json(e.object));
        } else if constexpr (std::is_same_v<E, event::Remove>) {
          return "remove " + std::to_string(e.id);
        } else {
          return "toggle_contours";
        }
      },
      ev);
}

inline std::string format_script(const EventScript& script) {
  std::string out;
  for (const auto& ev : script) {
    out += format_event(ev);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replay.

namespace step {

struct Caught {
  std::optional<MovableId> object;
  friend bool operator==(const Caught&, const Caught&) = default;
};
struct Released {
  std::optional<MovableId> object;
  friend bool operator==(const Released&, const Released&) = default;
};
struct Added {
  MovableId object;
  friend bool operator==(const Added&, const Added&) = default;
};
struct Removed {
  MovableId object;
  bool existed;
  friend bool operator==(const Removed&, const Removed&) = default;
};
struct Toggled {
  bool visible;
  friend bool operator==(const Toggled&, const Toggled&) = default;
};

}  // namespace step

using StepOutcome = std::variant<step::Caught, MoveOutcome, step::Released, step::Added, step::Removed, step::Toggled>;

inline std::string to_string(const MoveOutcome& m) {
  return std::visit(
      [](const auto& o) -> std::string {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Translated>) {
          return "translated " + std::to_string(o.object) + " " + format_real(o.delta.dx) + " " +
                 format_real(o.delta.dy);
        } else if constexpr (std::is_same_v<O, NodeMoved>) {
          return "node_moved " + std::to_string(o.object) + " " + std::to_string(o.node) + " " +
                 format_real(o.old_position.x) + " " + format_real(o.old_position.y) + " " +
                 format_real(o.new_position.x) + " " + format_real(o.new_position.y);
        } else if constexpr (std::is_same_v<O, HintOutcome>) {
          return std::string("hint ") + to_string(o.hint);
        } else {
          return "idle";
        }
      },
      m);
}

inline std::string to_string(const StepOutcome& s) {
  const auto id_or_none = [](const std::optional<MovableId>& id) {
    return id ? std::to_string(*id) : std::string("none");
  };
  return std::visit(
      [&](const auto& o) -> std::string {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, step::Caught>) {
          return "caught " + id_or_none(o.object);
        } else if constexpr (std::is_same_v<O, step::Released>) {
          return "released " + id_or_none(o.object);
        } else if constexpr (std::is_same_v<O, step::Added>) {
          return "added " + std::to_string(o.object);
        } else if constexpr (std::is_same_v<O, step::Removed>) {
          return "removed " + std::to_string(o.object) + (o.existed ? " true" : " false");
        } else if constexpr (std::is_same_v<O, step::Toggled>) {
          return o.visible ? "contours on" : "contours off";
        } else {
          return to_string(static_cast<const MoveOutcome&>(o));
        }
      },
      s);
}

// down -> catch, move -> move_to, up -> release; the rest map to the scene
// operations of the same name.
inline StepOutcome apply_event(Scene& scene, const ScriptEvent& ev) {
  return std::visit(
      [&](const auto& e) -> StepOutcome {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, event::Down>) {
          return step::Caught{scene.catch_at(e.at)};
        } else if constexpr (std::is_same_v<E, event::Move>) {
          return scene.move_to(e.at);
        } else if constexpr (std::is_same_v<E, event::Up>) {
          return step::Released{scene.release()};
        } else if constexpr (std::is_same_v<E, event::Add>) {
          return step::Added{scene.add(e.object)};
        } else if constexpr (std::is_same_v<E, event::Remove>) {
          return step::Removed{e.id, scene.remove(e.id)};
        } else {
          scene.set_contours_visible(!scene.contours_visible());
          return step::Toggled{scene.contours_visible()};
        }
      },
      ev);
}

struct ReplayResult {
  Scene scene;
  std::vector<StepOutcome> log;
};

// Optional observer sees the scene after each event (1-based event count).
inline ReplayResult apply_script(Scene scene, const EventScript& script,
                                 const std::function<void(std::size_t, const Scene&)>& after_event = {}) {
  ReplayResult out{std::move(scene), {}};
  out.log.reserve(script.size());
  for (std::size_t i = 0; i < script.size(); ++i) {
    out.log.push_back(apply_event(out.scene, script[i]));
    if (after_event) after_event(i + 1, out.scene);
  }
  return out;
}

}  // namespace movable
