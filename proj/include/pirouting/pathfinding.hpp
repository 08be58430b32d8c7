#pragma once

#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "pirouting/error.hpp"
#include "pirouting/network.hpp"

namespace pirouting {

struct Path {
  std::vector<HubId> hubs;  // origin first, destination last
  double total_time = 0.0;
  double total_distance = 0.0;

  bool operator==(const Path&) const = default;
};

/// Minimum travel time from every hub to one destination. Hubs that cannot
/// reach the destination are absent.
struct MinTimeTable {
  HubId destination;
  std::map<HubId, double> min_time_to_dest;

  std::optional<double> find(const HubId& h) const {
    auto it = min_time_to_dest.find(h);
    if (it == min_time_to_dest.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const HubId& h) const { return min_time_to_dest.contains(h); }
};

namespace detail {

struct PathLabel {
  double time = 0.0;
  double distance = 0.0;
  std::vector<HubId> hubs;

  // (time, hop count, hub sequence): the deterministic tie-break order.
  bool operator<(const PathLabel& o) const {
    if (time != o.time) return time < o.time;
    if (hubs.size() != o.hubs.size()) return hubs.size() < o.hubs.size();
    return hubs < o.hubs;
  }
};

}  // namespace detail

/// Minimum-travel-time path by Dijkstra. Equal times prefer fewer hops, then
/// the lexicographically smaller hub sequence. Throws UnknownHub or NoPath.
inline Path shortest_path(const Network& net, const HubId& s, const HubId& d) {
  net.hub(s);
  net.hub(d);
  if (s == d) return Path{{s}, 0.0, 0.0};

  using detail::PathLabel;
  auto worse = [](const PathLabel& a, const PathLabel& b) { return b < a; };
  std::priority_queue<PathLabel, std::vector<PathLabel>, decltype(worse)> open(worse);
  std::map<HubId, PathLabel> best;
  std::set<HubId> settled;

  best[s] = PathLabel{0.0, 0.0, {s}};
  open.push(best[s]);
  while (!open.empty()) {
    PathLabel cur = open.top();
    open.pop();
    const HubId u = cur.hubs.back();
    if (settled.contains(u)) continue;
    settled.insert(u);
    if (u == d) return Path{std::move(cur.hubs), cur.time, cur.distance};

    for (const auto& arc : net.outgoing(u)) {
      if (settled.contains(arc.to)) continue;
      PathLabel next{cur.time + arc.travel_time, cur.distance + arc.distance, cur.hubs};
      next.hubs.push_back(arc.to);
      auto it = best.find(arc.to);
      if (it == best.end() || next < it->second) {
        best[arc.to] = next;
        open.push(std::move(next));
      }
    }
  }
  throw NoPath("no path from " + s.str() + " to " + d.str());
}

/// Shortest times to `d` from every hub (Dijkstra over reversed arcs).
inline MinTimeTable min_time_table(const Network& net, const HubId& d) {
  net.hub(d);
  std::map<HubId, std::vector<const Arc*>> incoming;
  for (const auto& h : net.hubs()) {
    for (const auto& a : net.outgoing(h.id)) incoming[a.to].push_back(&a);
  }

  MinTimeTable table{d, {}};
  using Entry = std::pair<double, HubId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::map<HubId, double> tentative{{d, 0.0}};
  open.push({0.0, d});
  while (!open.empty()) {
    auto [t, u] = open.top();
    open.pop();
    if (table.contains(u)) continue;
    table.min_time_to_dest.emplace(u, t);
    for (const Arc* a : incoming[u]) {
      if (table.contains(a->from)) continue;
      const double cand = t + a->travel_time;
      auto it = tentative.find(a->from);
      if (it == tentative.end() || cand < it->second) {
        tentative[a->from] = cand;
        open.push({cand, a->from});
      }
    }
  }
  return table;
}

}  // namespace pirouting
