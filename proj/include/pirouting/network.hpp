#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pirouting/error.hpp"
#include "pirouting/geo.hpp"

namespace pirouting {

/// Opaque, non-empty hub identifier. Ordering is plain string ordering and is
/// what every deterministic iteration in the library is keyed on.
class HubId {
 public:
  HubId() = default;
  explicit HubId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const HubId&) const = default;

 private:
  std::string value_;
};

inline std::ostream& operator<<(std::ostream& os, const HubId& id) { return os << id.str(); }

namespace literals {
inline HubId operator""_hub(const char* s, std::size_t n) { return HubId(std::string(s, n)); }
}  // namespace literals

struct Hub {
  HubId id;
  std::string name;
  geo::GeoPoint location;
  bool is_destination_terminal = false;

  bool operator==(const Hub&) const = default;
};

struct Arc {
  HubId from;
  HubId to;
  double travel_time = 0.0;  // hours
  double distance = 0.0;     // miles

  bool operator==(const Arc&) const = default;
};

/// Every structural problem with a hub/arc set, in a stable order. Empty means
/// the pair can be turned into a Network.
inline std::vector<std::string> collect_violations(const std::vector<Hub>& hubs,
                                                   const std::vector<Arc>& arcs) {
  std::vector<std::string> out;
  std::set<HubId> ids;
  for (const auto& h : hubs) {
    if (h.id.empty()) {
      out.emplace_back("empty hub id");
    } else if (!ids.insert(h.id).second) {
      out.push_back("duplicate hub id: " + h.id.str());
    }
  }

  std::set<std::pair<HubId, HubId>> seen;
  std::map<HubId, std::vector<HubId>> reverse;
  for (const auto& a : arcs) {
    const std::string name = "edge " + a.from.str() + "->" + a.to.str();
    bool ok = true;
    if (!ids.contains(a.from)) {
      out.push_back("dangling endpoint: " + name + " references unknown hub " + a.from.str());
      ok = false;
    }
    if (!ids.contains(a.to)) {
      out.push_back("dangling endpoint: " + name + " references unknown hub " + a.to.str());
      ok = false;
    }
    if (a.from == a.to) {
      out.push_back("self loop: " + name);
      ok = false;
    }
    if (!(a.travel_time > 0.0) || !std::isfinite(a.travel_time)) {
      out.push_back("non-positive travel_time on " + name);
      ok = false;
    }
    if (!(a.distance > 0.0) || !std::isfinite(a.distance)) {
      out.push_back("non-positive distance on " + name);
      ok = false;
    }
    if (!seen.insert({a.from, a.to}).second) {
      out.push_back("duplicate arc: " + name);
      ok = false;
    }
    if (ok) reverse[a.to].push_back(a.from);
  }

  // Every non-terminal hub must reach every terminal.
  for (const auto& t : hubs) {
    if (!t.is_destination_terminal || t.id.empty()) continue;
    std::set<HubId> reached{t.id};
    std::deque<HubId> frontier{t.id};
    while (!frontier.empty()) {
      const HubId u = frontier.front();
      frontier.pop_front();
      if (auto it = reverse.find(u); it != reverse.end()) {
        for (const auto& p : it->second) {
          if (reached.insert(p).second) frontier.push_back(p);
        }
      }
    }
    for (const auto& h : hubs) {
      if (!h.is_destination_terminal && !h.id.empty() && !reached.contains(h.id)) {
        out.push_back("unreachable terminal: hub " + h.id.str() + " cannot reach terminal " + t.id.str());
      }
    }
  }
  return out;
}

/// Directed hub graph. Immutable once built; hubs and each hub's outgoing arcs
/// are kept sorted by HubId so every traversal is replayable.
class Network {
 public:
  /// Validates and builds; throws ValidationError listing every violation.
  static Network build(std::vector<Hub> hubs, std::vector<Arc> arcs) {
    if (auto v = collect_violations(hubs, arcs); !v.empty()) throw ValidationError(std::move(v));

    Network net;
    std::sort(hubs.begin(), hubs.end(), [](const Hub& a, const Hub& b) { return a.id < b.id; });
    net.hubs_ = std::move(hubs);
    for (std::size_t i = 0; i < net.hubs_.size(); ++i) net.index_.emplace(net.hubs_[i].id, i);
    net.out_.resize(net.hubs_.size());
    for (auto& a : arcs) net.out_[net.index_.at(a.from)].push_back(std::move(a));
    for (auto& list : net.out_) {
      std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }
    net.arc_count_ = 0;
    for (const auto& list : net.out_) net.arc_count_ += list.size();
    return net;
  }

  const std::vector<Hub>& hubs() const noexcept { return hubs_; }
  std::size_t hub_count() const noexcept { return hubs_.size(); }
  std::size_t arc_count() const noexcept { return arc_count_; }

  bool contains(const HubId& id) const { return index_.contains(id); }

  const Hub& hub(const HubId& id) const { return hubs_[index_of(id)]; }

  /// Outgoing arcs of `id`, ascending by destination HubId.
  std::span<const Arc> outgoing(const HubId& id) const { return out_[index_of(id)]; }

  const Arc* find_arc(const HubId& from, const HubId& to) const {
    for (const auto& a : outgoing(from)) {
      if (a.to == to) return &a;
    }
    return nullptr;
  }

  /// All arcs, ordered by (from, to).
  std::vector<Arc> arcs() const {
    std::vector<Arc> all;
    all.reserve(arc_count_);
    for (const auto& list : out_) all.insert(all.end(), list.begin(), list.end());
    return all;
  }

  std::vector<HubId> terminals() const {
    std::vector<HubId> t;
    for (const auto& h : hubs_) {
      if (h.is_destination_terminal) t.push_back(h.id);
    }
    return t;
  }

  std::vector<HubId> non_terminals() const {
    std::vector<HubId> t;
    for (const auto& h : hubs_) {
      if (!h.is_destination_terminal) t.push_back(h.id);
    }
    return t;
  }

  bool operator==(const Network& other) const {
    return hubs_ == other.hubs_ && out_ == other.out_;
  }

 private:
  Network() = default;

  std::size_t index_of(const HubId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownHub("unknown hub: " + id.str());
    return it->second;
  }

  std::vector<Hub> hubs_;
  std::map<HubId, std::size_t> index_;
  std::vector<std::vector<Arc>> out_;
  std::size_t arc_count_ = 0;
};

/// Outgoing arcs of `h` ordered by neighbor id. Throws UnknownHub.
inline std::span<const Arc> neighbors(const Network& net, const HubId& h) { return net.outgoing(h); }

}  // namespace pirouting

template <>
struct std::hash<pirouting::HubId> {
  std::size_t operator()(const pirouting::HubId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
