#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <map>
#include <ranges>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pirouting/discovery.hpp"
#include "pirouting/error.hpp"
#include "pirouting/network.hpp"
#include "pirouting/pathfinding.hpp"

namespace pirouting {

enum class RoutingMode { Baseline, Directional };

constexpr std::string_view to_string(RoutingMode m) noexcept {
  return m == RoutingMode::Baseline ? "baseline" : "directional";
}

inline RoutingMode parse_routing_mode(std::string_view s) {
  if (s == "baseline") return RoutingMode::Baseline;
  if (s == "directional") return RoutingMode::Directional;
  throw ConfigError("unknown routing mode: " + std::string(s));
}

struct PolicyWeights {
  double w_time = 1.0;
  double w_consolidation = 0.5;

  void validate() const {
    if (!(w_time >= 0.0) || !(w_consolidation >= 0.0)) throw ConfigError("policy weights must be non-negative");
    if (w_time == 0.0 && w_consolidation == 0.0) throw ConfigError("policy weights cannot both be zero");
  }
  bool operator==(const PolicyWeights&) const = default;
};

struct HopScore {
  double time_score = 0.0;
  double consolidation_score = 0.0;
  double total = 0.0;
};

struct NextHopDecision {
  std::string shipment_id;
  HubId chosen;
  RoutingMode mode = RoutingMode::Baseline;
  std::map<HubId, HopScore> score_breakdown;
};

/// What the policy may see of another shipment waiting at the same hub.
struct QueuedCandidates {
  std::string shipment_id;
  std::vector<HubId> next_hops;
};

/// Next hub on a precomputed path.
inline HubId baseline_next_hop(const Path& path, const HubId& current) {
  auto it = std::find(path.hubs.begin(), path.hubs.end(), current);
  if (it == path.hubs.end()) throw NotOnPath(current.str() + " is not on the path");
  if (std::next(it) == path.hubs.end()) throw AlreadyAtDestination(current.str() + " is the path's destination");
  return *std::next(it);
}

/// Anything exposing `shipment_id` and `next_hops` like QueuedCandidates; the
/// simulator passes its live queue entries without copying them.
template <typename R>
concept QueueSnapshot = std::ranges::input_range<R> && requires(std::ranges::range_reference_t<R> e) {
  { e.shipment_id } -> std::convertible_to<std::string_view>;
  { e.next_hops.begin() };
};

/// Share of the other queued shipments whose own next hops include `candidate`.
template <QueueSnapshot Queue>
double consolidation_score(const Queue& queue, const HubId& candidate, std::string_view shipment_id) {
  std::size_t others = 0;
  std::size_t sharing = 0;
  for (const auto& q : queue) {
    if (q.shipment_id == shipment_id) continue;
    ++others;
    if (std::find(q.next_hops.begin(), q.next_hops.end(), candidate) != q.next_hops.end()) ++sharing;
  }
  return others == 0 ? 0.0 : static_cast<double>(sharing) / static_cast<double>(others);
}

/// Scores each next hop as
///   w_time * (via_time / best_via_time) - w_consolidation * consolidation
/// where via_time is the hop's arc time plus its minimum time to destination,
/// and picks the lowest total (ties to the smaller HubId).
template <QueueSnapshot Queue>
NextHopDecision directional_next_hop(const Network& net, const CandidateSet& cs, const MinTimeTable& table,
                                     const Queue& queue, std::string_view shipment_id, const PolicyWeights& w) {
  if (cs.next_hops.empty()) throw EmptyCandidates("no next hops for shipment " + std::string(shipment_id));

  std::map<HubId, double> via;
  for (const auto& n : cs.next_hops) {
    const Arc* arc = net.find_arc(cs.origin_of_search, n);
    if (!arc) throw std::invalid_argument("next hop " + n.str() + " is not adjacent to the search origin");
    via[n] = arc->travel_time + table.min_time_to_dest.at(n);
  }
  double best_via = INFINITY;
  for (const auto& [_, t] : via) best_via = std::min(best_via, t);

  NextHopDecision decision;
  decision.shipment_id = std::string(shipment_id);
  decision.mode = RoutingMode::Directional;
  double best_total = INFINITY;
  for (const auto& [hub, t] : via) {  // ascending HubId, so strict < keeps the smaller id on ties
    HopScore s;
    s.time_score = t / best_via;
    s.consolidation_score = consolidation_score(queue, hub, shipment_id);
    s.total = w.w_time * s.time_score - w.w_consolidation * s.consolidation_score;
    decision.score_breakdown.emplace(hub, s);
    if (s.total < best_total) {
      best_total = s.total;
      decision.chosen = hub;
    }
  }
  return decision;
}

}  // namespace pirouting
