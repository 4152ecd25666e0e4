#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "movable/contour.hpp"

namespace movable {

// Role contract for anything the Mover can hold. After on_translate(d) the
// contour must equal translate(old contour, d); after on_node_move the
// returned point must equal contour().nodes[id].position.
template <typename T>
concept MovableBehavior = std::copyable<T> && requires(T obj, const T cobj, Delta d, NodeId id, Point p) {
  { cobj.contour() } -> std::convertible_to<Contour>;
  { obj.on_translate(d) };
  { obj.on_node_move(id, p) } -> std::convertible_to<Point>;
};

using MovableId = std::uint64_t;

struct GrabState {
  MovableId object = 0;
  ContourHit hit;  // never NoHit
  Delta offset;    // pointer minus grabbed anchor at catch time
  Point caught_at;
  Point anchor;    // node position at catch time (connection grabs: caught_at)

  friend bool operator==(const GrabState&, const GrabState&) = default;
};

struct Translated {
  MovableId object;
  Delta delta;
  friend bool operator==(const Translated&, const Translated&) = default;
};

struct NodeMoved {
  MovableId object;
  NodeId node;
  Point old_position;
  Point new_position;
  friend bool operator==(const NodeMoved&, const NodeMoved&) = default;
};

struct HintOutcome {
  Hint hint;
  friend bool operator==(const HintOutcome&, const HintOutcome&) = default;
};

struct Idle {
  friend bool operator==(const Idle&, const Idle&) = default;
};

using MoveOutcome = std::variant<Idle, Translated, NodeMoved, HintOutcome>;

// Registry of movable objects in painter order (bottom first) plus the single
// active grab. Drive it with catch_at / move_to / release from pointer
// down / move / up.
template <MovableBehavior T>
class Mover {
 public:
  struct Entry {
    MovableId id;
    T object;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Mover() = default;

  MovableId add(T obj) {
    validate(obj.contour());
    const MovableId id = next_id_++;
    entries_.push_back({id, std::move(obj)});
    return id;
  }

  // Re-inserts an object under a known id on top of the z-order (scene
  // loading). Future ids continue past it.
  void restore(MovableId id, T obj) {
    if (find_index(id)) throw ValidationError("duplicate object id " + std::to_string(id));
    validate(obj.contour());
    entries_.push_back({id, std::move(obj)});
    next_id_ = std::max(next_id_, id + 1);
  }

  bool remove(MovableId id) {
    const auto idx = find_index(id);
    if (!idx) return false;
    if (grab_ && grab_->object == id) grab_.reset();
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(*idx));
    return true;
  }

  std::optional<MovableId> catch_at(Point p) {
    require_finite(p);
    if (grab_) return grab_->object;
    for (std::size_t i = entries_.size(); i-- > 0;) {
      const Contour c = entries_[i].object.contour();
      const ContourHit hit = hit_test(c, p);
      if (!is_hit(hit)) continue;
      Point anchor = p;
      if (const auto* n = std::get_if<NodeHit>(&hit)) anchor = c.nodes[n->id].position;
      grab_ = GrabState{entries_[i].id, hit, p - anchor, p, anchor};
      last_pointer_ = p;
      if (raise_on_catch_) raise_to_top(i);
      return grab_->object;
    }
    return std::nullopt;
  }

  MoveOutcome move_to(Point p) {
    require_finite(p);
    if (!grab_) {
      if (const auto hit = topmost_hit(p)) return HintOutcome{cursor_hint(hit->second)};
      return Idle{};
    }
    T& obj = entries_[*find_index(grab_->object)].object;
    if (std::holds_alternative<ConnectionHit>(grab_->hit)) {
      const Delta d = p - last_pointer_;
      last_pointer_ = p;
      obj.on_translate(d);
      return Translated{grab_->object, d};
    }
    const NodeId id = std::get<NodeHit>(grab_->hit).id;
    last_pointer_ = p;
    const Node node = obj.contour().nodes.at(id);
    // anchor + (p - caught_at) rather than p - offset: the two agree except
    // in the last bit, and this form gives back the anchor exactly when the
    // pointer returns to the catch point.
    const Point constrained = constrain_node(node, grab_->anchor + (p - grab_->caught_at));
    if (constrained == node.position) {
      return NodeMoved{grab_->object, id, node.position, node.position};
    }
    const Point accepted = obj.on_node_move(id, constrained);
    return NodeMoved{grab_->object, id, node.position, accepted};
  }

  std::optional<MovableId> release() {
    if (!grab_) return std::nullopt;
    const MovableId id = grab_->object;
    grab_.reset();
    return id;
  }

  // Topmost object whose contour reacts at p, with the hit.
  [[nodiscard]] std::optional<std::pair<MovableId, ContourHit>> topmost_hit(Point p) const {
    for (std::size_t i = entries_.size(); i-- > 0;) {
      ContourHit hit = hit_test(entries_[i].object.contour(), p);
      if (is_hit(hit)) return std::pair{entries_[i].id, hit};
    }
    return std::nullopt;
  }

  // One slot up / down in painter order. Returns false when already at the
  // end or the id is unknown.
  bool raise(MovableId id) {
    const auto idx = find_index(id);
    if (!idx || *idx + 1 >= entries_.size()) return false;
    std::swap(entries_[*idx], entries_[*idx + 1]);
    return true;
  }

  bool lower(MovableId id) {
    const auto idx = find_index(id);
    if (!idx || *idx == 0) return false;
    std::swap(entries_[*idx], entries_[*idx - 1]);
    return true;
  }

  // Overlay visibility only; hit testing ignores it.
  void set_contours_visible(bool flag) { contours_visible_ = flag; }
  [[nodiscard]] bool contours_visible() const { return contours_visible_; }

  void set_raise_on_catch(bool flag) { raise_on_catch_ = flag; }
  [[nodiscard]] bool raise_on_catch() const { return raise_on_catch_; }

  [[nodiscard]] const std::optional<GrabState>& grab() const { return grab_; }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] MovableId next_id() const { return next_id_; }

  // Ids never go backwards; a smaller value is ignored.
  void reserve_ids(MovableId next) { next_id_ = std::max(next_id_, next); }

  [[nodiscard]] std::vector<MovableId> z_order() const {
    std::vector<MovableId> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) out.push_back(e.id);
    return out;
  }

  [[nodiscard]] const T* find(MovableId id) const {
    const auto idx = find_index(id);
    return idx ? &entries_[*idx].object : nullptr;
  }

  // Scene equality: objects, z-order, id counter and visibility. The transient
  // grab is not part of it.
  friend bool operator==(const Mover& a, const Mover& b) {
    return a.entries_ == b.entries_ && a.next_id_ == b.next_id_ &&
           a.contours_visible_ == b.contours_visible_;
  }

 private:
  [[nodiscard]] std::optional<std::size_t> find_index(MovableId id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].id == id) return i;
    }
    return std::nullopt;
  }

  void raise_to_top(std::size_t idx) {
    std::rotate(entries_.begin() + static_cast<std::ptrdiff_t>(idx),
                entries_.begin() + static_cast<std::ptrdiff_t>(idx) + 1, entries_.end());
  }

  std::vector<Entry> entries_;  // bottom → top
  MovableId next_id_ = 0;
  std::optional<GrabState> grab_;
  Point last_pointer_;
  bool raise_on_catch_ = true;
  bool contours_visible_ = false;
};

}  // namespace movable
