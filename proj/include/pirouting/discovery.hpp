#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pirouting/error.hpp"
#include "pirouting/geo.hpp"
#include "pirouting/network.hpp"
#include "pirouting/pathfinding.hpp"

namespace pirouting {

/// Absolute slack (hours) on every budget comparison. Table entries and path
/// sums are accumulated in different orders, so exact ties can differ by a
/// few ulps.
inline constexpr double kBudgetSlack = 1e-9;

/// Hours left until the shipment's deadline at the moment of discovery.
class RoutingBudget {
 public:
  explicit RoutingBudget(double remaining) : remaining_(remaining) {
    if (!(remaining >= 0.0)) throw ConfigError("routing budget must be >= 0");
  }
  double remaining() const noexcept { return remaining_; }

 private:
  double remaining_;
};

struct DiscoveryOptions {
  geo::SectorParams sector;
  /// Flat transshipment time charged at each intermediate hub (never at the
  /// search origin or the destination).
  double handling_charge = 0.5;
};

struct CandidateMember {
  /// Best sector-compliant travel time from the search origin, including
  /// handling at the intermediate hubs passed on the way.
  double min_time_from_current = 0.0;
  double min_time_to_dest = 0.0;

  bool operator==(const CandidateMember&) const = default;
};

struct CandidateSet {
  HubId origin_of_search;
  HubId destination;
  geo::Bearing anchor;
  bool fallback_used = false;
  std::map<HubId, CandidateMember> members;
  std::vector<HubId> next_hops;  // ascending HubId
  std::set<std::pair<HubId, HubId>> explored_arcs;
  std::size_t expansions = 0;

  bool operator==(const CandidateSet&) const = default;
};

struct Infeasible {
  double shortfall = 0.0;
  double recommended_extension = 0.0;
  std::size_t expansions = 0;

  bool operator==(const Infeasible&) const = default;
};

using DiscoveryOutcome = std::variant<CandidateSet, Infeasible>;

struct AnchorBearing {
  geo::Bearing anchor;
  HubId first_sp_hub;
};

/// Bearing from `current` toward the midpoint of the first shortest-path hop
/// and the destination (straight at the destination when that hop is the
/// destination itself).
inline AnchorBearing compute_anchor_bearing(const Network& net, const HubId& current, const HubId& d) {
  const Path sp = shortest_path(net, current, d);
  if (sp.hubs.size() < 2) throw DegenerateBearing("anchor undefined: already at destination " + d.str());
  const HubId& first = sp.hubs[1];
  const auto& here = net.hub(current).location;
  const auto& there = net.hub(d).location;
  if (first == d) return {geo::initial_bearing(here, there), first};
  const auto mid = geo::geographic_midpoint(net.hub(first).location, there);
  return {geo::initial_bearing(here, mid), first};
}

/// Sector test for one hop. A zero-length hop cannot point backwards, so
/// coincident endpoints always pass.
inline bool hop_in_sector(const Network& net, const HubId& from, const HubId& to, geo::Bearing anchor,
                          const geo::SectorParams& params) {
  const auto& a = net.hub(from).location;
  const auto& b = net.hub(to).location;
  if (geo::coincident(a, b)) return true;
  return geo::within_sector(geo::initial_bearing(a, b), anchor, params);
}

inline std::vector<HubId> sector_filter_neighbors(const Network& net, const HubId& current, geo::Bearing anchor,
                                                  const geo::SectorParams& params) {
  std::vector<HubId> kept;
  for (const auto& arc : net.outgoing(current)) {
    if (hop_in_sector(net, current, arc.to, anchor, params)) kept.push_back(arc.to);
  }
  return kept;
}

/// True iff `h` can still make the deadline after `elapsed` hours. Handling is
/// charged unless `h` is the table's destination.
inline bool feasible_continuation(const MinTimeTable& table, const HubId& h, double elapsed,
                                  const RoutingBudget& budget, double handling_charge) {
  const auto rest = table.find(h);
  if (!rest) return false;
  const double handling = h == table.destination ? 0.0 : handling_charge;
  return elapsed + handling + *rest <= budget.remaining() + kBudgetSlack;
}

/// One budget-pruned BFS pass with a fixed anchor.
struct SectorSearch {
  std::map<HubId, double> reached;  // admitted hub -> best cumulative time
  std::vector<HubId> next_hops;
  std::set<std::pair<HubId, HubId>> explored_arcs;
  std::size_t expansions = 0;
};

/// Label-correcting BFS from `current`: expands only in-sector arcs, admits a
/// hub only when it can still reach `d` within budget, and re-queues a hub
/// whenever a cheaper arrival is found. The destination is never expanded.
inline SectorSearch sector_bfs(const Network& net, const MinTimeTable& table, const HubId& current,
                               const HubId& d, geo::Bearing anchor, const RoutingBudget& budget,
                               const DiscoveryOptions& opts) {
  SectorSearch out;
  std::map<HubId, double> best{{current, 0.0}};
  std::deque<HubId> queue{current};
  std::set<HubId> queued{current};

  while (!queue.empty()) {
    const HubId u = queue.front();
    queue.pop_front();
    queued.erase(u);
    ++out.expansions;
    const double departure = best.at(u) + (u == current ? 0.0 : opts.handling_charge);

    for (const auto& arc : net.outgoing(u)) {
      const HubId& n = arc.to;
      if (n == current) continue;
      if (!hop_in_sector(net, u, n, anchor, opts.sector)) continue;
      const double arrival = departure + arc.travel_time;
      if (!feasible_continuation(table, n, arrival, budget, opts.handling_charge)) continue;

      out.explored_arcs.insert({u, n});
      if (u == current) out.next_hops.push_back(n);
      auto it = best.find(n);
      if (it != best.end() && !(arrival < it->second)) continue;
      best[n] = arrival;
      if (n != d && !queued.contains(n)) {
        queue.push_back(n);
        queued.insert(n);
      }
    }
  }
  best.erase(current);
  out.reached = std::move(best);
  return out;
}

namespace detail {

inline CandidateSet make_candidate_set(const MinTimeTable& table, const HubId& current, const HubId& d,
                                       geo::Bearing anchor, bool fallback, SectorSearch&& search,
                                       std::size_t expansions) {
  CandidateSet cs;
  cs.origin_of_search = current;
  cs.destination = d;
  cs.anchor = anchor;
  cs.fallback_used = fallback;
  for (const auto& [hub, g] : search.reached) {
    cs.members.emplace(hub, CandidateMember{g, table.min_time_to_dest.at(hub)});
  }
  // The destination always belongs to a non-empty set; if the sector search
  // did not reach it, record the unrestricted minimum.
  cs.members.try_emplace(d, CandidateMember{table.min_time_to_dest.at(current), 0.0});
  cs.next_hops = std::move(search.next_hops);
  cs.explored_arcs = std::move(search.explored_arcs);
  cs.expansions = expansions;
  return cs;
}

}  // namespace detail

/// Area discovery: sector-restricted, budget-pruned BFS around the anchor
/// bearing, with a single recalibration toward the first shortest-path hop
/// when the primary sector yields no next hop or loses that hop. Returns
/// Infeasible (with the time shortfall) when even the recalibrated search is
/// empty; throws NoPath when `d` is unreachable regardless of budget.
inline DiscoveryOutcome rss_bfs(const Network& net, const MinTimeTable& table, const HubId& current,
                                const HubId& d, const RoutingBudget& budget, const DiscoveryOptions& opts) {
  net.hub(current);
  net.hub(d);
  if (table.destination != d) throw std::invalid_argument("min-time table is rooted at a different destination");
  if (current == d) {
    CandidateSet cs;
    cs.origin_of_search = current;
    cs.destination = d;
    cs.members.emplace(d, CandidateMember{0.0, 0.0});
    return cs;
  }
  if (!table.contains(current)) throw NoPath("no path from " + current.str() + " to " + d.str());

  std::size_t expansions = 0;
  const Path sp = shortest_path(net, current, d);
  const HubId& first = sp.hubs[1];
  const auto& here = net.hub(current).location;

  // Primary anchor. A degenerate geometry skips straight to recalibration.
  std::optional<geo::Bearing> primary;
  try {
    primary = compute_anchor_bearing(net, current, d).anchor;
  } catch (const DegenerateBearing&) {
  } catch (const AmbiguousMidpoint&) {
  }
  // Recalibrate when the primary sector is empty, or when it drops the first
  // shortest-path hop even though that hop can still make the budget.
  const auto* first_arc = net.find_arc(current, first);
  const bool first_admissible = feasible_continuation(table, first, first_arc->travel_time, budget, opts.handling_charge);
  if (primary) {
    auto search = sector_bfs(net, table, current, d, *primary, budget, opts);
    expansions += search.expansions;
    const bool keeps_first =
        !first_admissible || std::find(search.next_hops.begin(), search.next_hops.end(), first) != search.next_hops.end();
    if (!search.next_hops.empty() && keeps_first) {
      return detail::make_candidate_set(table, current, d, *primary, false, std::move(search), expansions);
    }
  }

  geo::Bearing fallback;
  if (!geo::coincident(here, net.hub(first).location)) {
    fallback = geo::initial_bearing(here, net.hub(first).location);
  } else if (!geo::coincident(here, net.hub(d).location)) {
    fallback = geo::initial_bearing(here, net.hub(d).location);
  }
  auto search = sector_bfs(net, table, current, d, fallback, budget, opts);
  expansions += search.expansions;
  if (!search.next_hops.empty()) {
    return detail::make_candidate_set(table, current, d, fallback, true, std::move(search), expansions);
  }

  const double intermediates = static_cast<double>(sp.hubs.size() - 2);
  const double needed = sp.total_time + opts.handling_charge * intermediates;
  const double shortfall = needed - budget.remaining();
  if (!(shortfall > 0.0)) {
    throw std::logic_error("recalibrated discovery empty although the shortest path fits the budget");
  }
  return Infeasible{shortfall, std::ceil(shortfall), expansions};
}

inline const CandidateSet* found(const DiscoveryOutcome& outcome) { return std::get_if<CandidateSet>(&outcome); }
const CandidateSet* found(const DiscoveryOutcome&& outcome) = delete;  // would dangle

}  // namespace pirouting
