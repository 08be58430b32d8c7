#pragma once

// Brute-force reference implementations. They enumerate simple paths
// exhaustively and share nothing with the Dijkstra/BFS code they check
// beyond the geodesy primitives.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pirouting/discovery.hpp"
#include "pirouting/geo.hpp"
#include "pirouting/network.hpp"
#include "pirouting/pathfinding.hpp"

namespace pirouting::testing {

/// Every simple path from s to d, each with forward-accumulated totals.
inline std::vector<Path> all_simple_paths(const Network& net, const HubId& s, const HubId& d) {
  std::vector<Path> out;
  Path cur{{s}, 0.0, 0.0};
  std::set<HubId> on_path{s};
  std::function<void()> dfs = [&] {
    const HubId u = cur.hubs.back();
    if (u == d) {
      out.push_back(cur);
      return;
    }
    for (const auto& a : net.outgoing(u)) {
      if (on_path.contains(a.to)) continue;
      const Path saved = cur;
      cur.hubs.push_back(a.to);
      cur.total_time += a.travel_time;
      cur.total_distance += a.distance;
      on_path.insert(a.to);
      dfs();
      on_path.erase(a.to);
      cur = saved;
    }
  };
  dfs();
  return out;
}

/// Best path under (time, hops, lexicographic sequence).
inline std::optional<Path> brute_shortest_path(const Network& net, const HubId& s, const HubId& d) {
  std::optional<Path> best;
  for (auto& p : all_simple_paths(net, s, d)) {
    if (!best) {
      best = p;
      continue;
    }
    const bool better = p.total_time < best->total_time ||
                        (p.total_time == best->total_time &&
                         (p.hubs.size() < best->hubs.size() ||
                          (p.hubs.size() == best->hubs.size() && p.hubs < best->hubs)));
    if (better) best = p;
  }
  return best;
}

inline std::optional<double> brute_min_time(const Network& net, const HubId& s, const HubId& d) {
  auto p = brute_shortest_path(net, s, d);
  if (!p) return std::nullopt;
  return p->total_time;
}

struct OracleDiscovery {
  bool infeasible = false;
  bool fallback_used = false;
  std::set<HubId> members;
  std::set<HubId> next_hops;
};

/// Exhaustive sector-path enumeration: every simple path from `current` whose
/// arcs all lie in the sector and whose every prefix still reaches `d` within
/// budget (handling charged at intermediate hubs); the destination is never
/// passed through. Recalibrates once toward the first shortest-path hop when
/// the primary sector is empty or misses an admissible first hop.
inline OracleDiscovery brute_discovery(const Network& net, const HubId& current, const HubId& d, double budget,
                                       const DiscoveryOptions& opts) {
  OracleDiscovery out;
  if (current == d) {
    out.members = {d};
    return out;
  }
  const auto sp = brute_shortest_path(net, current, d);
  if (!sp) throw NoPath("oracle: unreachable");

  std::map<HubId, std::optional<double>> rest;
  for (const auto& h : net.hubs()) rest[h.id] = h.id == d ? std::optional<double>(0.0) : brute_min_time(net, h.id, d);

  auto in_sector = [&](const HubId& u, const HubId& v, geo::Bearing anchor) {
    const auto& a = net.hub(u).location;
    const auto& b = net.hub(v).location;
    if (geo::coincident(a, b)) return true;
    return geo::angular_deviation(geo::initial_bearing(a, b), anchor) <= opts.sector.half_width();
  };

  auto search = [&](geo::Bearing anchor) {
    OracleDiscovery r;
    std::vector<HubId> path{current};
    std::set<HubId> on_path{current};
    std::function<void(double)> dfs = [&](double departure) {
      const HubId u = path.back();
      for (const auto& a : net.outgoing(u)) {
        const HubId& n = a.to;
        if (on_path.contains(n) || !in_sector(u, n, anchor) || !rest[n]) continue;
        const double arrival = departure + a.travel_time;
        const double handling = n == d ? 0.0 : opts.handling_charge;
        if (arrival + handling + *rest[n] > budget + kBudgetSlack) continue;
        r.members.insert(n);
        if (u == current) r.next_hops.insert(n);
        if (n == d) continue;
        path.push_back(n);
        on_path.insert(n);
        dfs(arrival + handling);
        on_path.erase(n);
        path.pop_back();
      }
    };
    dfs(0.0);
    if (!r.members.empty()) r.members.insert(d);
    return r;
  };

  const HubId first = sp->hubs[1];
  const auto& here = net.hub(current).location;
  std::optional<geo::Bearing> primary;
  try {
    primary = first == d ? geo::initial_bearing(here, net.hub(d).location)
                         : geo::initial_bearing(here, geo::geographic_midpoint(net.hub(first).location,
                                                                               net.hub(d).location));
  } catch (const Error&) {
  }
  double first_arc = 0.0;
  for (const auto& a : net.outgoing(current)) {
    if (a.to == first) first_arc = a.travel_time;
  }
  const bool first_admissible =
      first_arc + (first == d ? 0.0 : opts.handling_charge) + *rest[first] <= budget + kBudgetSlack;
  if (primary) {
    auto r = search(*primary);
    if (!r.next_hops.empty() && (!first_admissible || r.next_hops.contains(first))) return r;
  }
  geo::Bearing fallback;
  if (!geo::coincident(here, net.hub(first).location)) fallback = geo::initial_bearing(here, net.hub(first).location);
  auto r = search(fallback);
  r.fallback_used = true;
  if (r.next_hops.empty()) r.infeasible = true;
  return r;
}

}  // namespace pirouting::testing
