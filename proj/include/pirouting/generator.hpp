#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pirouting/error.hpp"
#include "pirouting/geo.hpp"
#include "pirouting/network.hpp"
#include "pirouting/rng.hpp"

namespace pirouting {

struct BoundingBox {
  double lat_min = 24.0;
  double lat_max = 37.0;
  double lon_min = -92.0;
  double lon_max = -75.0;
};

struct GeneratorParams {
  std::size_t hub_count = 30;
  BoundingBox bounding_box;
  std::size_t k_nearest = 3;
  double speed_mph = 50.0;
  std::size_t terminal_count = 2;
};

namespace detail {

inline double round_to(double v, double unit) { return std::round(v / unit) * unit; }

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Synthetic regional hub network: uniform hub placement, undirected k-nearest
/// links, component stitching until connected, and terminals chosen
/// farthest-apart first. Same (params, seed) always yields the same network.
inline Network generate_network(const GeneratorParams& params, std::uint64_t seed) {
  const auto& box = params.bounding_box;
  if (params.hub_count < 2) throw GenerationError("hub_count must be >= 2");
  if (params.k_nearest < 1) throw GenerationError("k_nearest must be >= 1");
  if (params.terminal_count < 1) throw GenerationError("terminal_count must be >= 1");
  if (params.terminal_count > params.hub_count) throw GenerationError("terminal_count exceeds hub_count");
  if (!(params.speed_mph > 0.0)) throw GenerationError("speed_mph must be > 0");
  if (!(box.lat_min < box.lat_max) || !(box.lon_min < box.lon_max) || box.lat_min < -90.0 ||
      box.lat_max > 90.0 || box.lon_min <= -180.0 || box.lon_max > 180.0) {
    throw GenerationError("invalid bounding box");
  }

  const std::size_t n = params.hub_count;
  const std::size_t width = std::max<std::size_t>(2, std::to_string(n - 1).size());
  auto make_id = [width](std::size_t i) {
    std::string digits = std::to_string(i);
    return "H" + std::string(width - digits.size(), '0') + digits;
  };

  Rng rng(seed);
  std::vector<geo::GeoPoint> points;
  std::set<std::pair<double, double>> used;
  while (points.size() < n) {
    const double lat = detail::round_to(rng.uniform(box.lat_min, box.lat_max), 1e-4);
    const double lon = detail::round_to(rng.uniform(box.lon_min, box.lon_max), 1e-4);
    if (!used.insert({lat, lon}).second) continue;
    points.emplace_back(lat, lon);
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = detail::round_to(geo::haversine_distance(points[i], points[j]), 0.01);
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> links;
  const std::size_t k = std::min(params.k_nearest, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    std::stable_sort(others.begin(), others.end(),
                     [&](std::size_t a, std::size_t b) { return dist[i][a] < dist[i][b]; });
    for (std::size_t m = 0; m < k; ++m) links.insert({std::min(i, others[m]), std::max(i, others[m])});
  }

  // Stitch components: repeatedly link the closest pair of hubs that lie in
  // different components.
  detail::DisjointSets sets(n);
  std::size_t components = n;
  for (const auto& [a, b] : links) {
    if (sets.unite(a, b)) --components;
  }
  while (components > 1) {
    std::pair<std::size_t, std::size_t> best{0, 0};
    double best_d = INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sets.find(i) != sets.find(j) && dist[i][j] < best_d) {
          best_d = dist[i][j];
          best = {i, j};
        }
      }
    }
    links.insert(best);
    sets.unite(best.first, best.second);
    --components;
  }

  std::vector<std::size_t> terminals;
  if (n >= 2) {
    std::pair<std::size_t, std::size_t> far{0, 1};
    double far_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (dist[i][j] > far_d) {
          far_d = dist[i][j];
          far = {i, j};
        }
      }
    }
    terminals.push_back(far.first);
    if (params.terminal_count >= 2) terminals.push_back(far.second);
  }
  while (terminals.size() < params.terminal_count) {
    std::size_t pick = n;
    double pick_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(terminals.begin(), terminals.end(), i) != terminals.end()) continue;
      double nearest = INFINITY;
      for (auto t : terminals) nearest = std::min(nearest, dist[i][t]);
      if (nearest > pick_d) {
        pick_d = nearest;
        pick = i;
      }
    }
    terminals.push_back(pick);
  }

  std::vector<Hub> hubs;
  for (std::size_t i = 0; i < n; ++i) {
    const bool terminal = std::find(terminals.begin(), terminals.end(), i) != terminals.end();
    hubs.push_back(Hub{HubId(make_id(i)), "Hub " + make_id(i).substr(1), points[i], terminal});
  }
  std::vector<Arc> arcs;
  for (const auto& [a, b] : links) {
    const double d = dist[a][b];
    if (!(d > 0.0)) throw GenerationError("coincident hubs after rounding");
    const double t = d / params.speed_mph;
    arcs.push_back(Arc{HubId(make_id(a)), HubId(make_id(b)), t, d});
    arcs.push_back(Arc{HubId(make_id(b)), HubId(make_id(a)), t, d});
  }
  try {
    return Network::build(std::move(hubs), std::move(arcs));
  } catch (const ValidationError& e) {
    throw GenerationError(std::string("generated network failed validation: ") + e.what());
  }
}

}  // namespace pirouting
