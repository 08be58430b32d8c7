#pragma once

#include <random>
#include <string>
#include <vector>

#include "pirouting/geo.hpp"
#include "pirouting/network.hpp"

namespace pirouting::testing {

struct RandomGraphSpec {
  std::size_t min_hubs = 3;
  std::size_t max_hubs = 8;
  double arc_probability = 0.45;
  double min_time = 0.5;
  double max_time = 5.0;
  /// Quantize times to this step (0 = continuous). Coarse steps force ties.
  double time_step = 0.0;
};

/// Small geolocated digraph, hub ids "A".."H". No terminals are flagged, so
/// arbitrary (possibly disconnected) graphs pass validation.
inline Network random_geo_network(std::mt19937_64& rng, const RandomGraphSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> count(spec.min_hubs, spec.max_hubs);
  std::uniform_real_distribution<double> lat(30.0, 36.0);
  std::uniform_real_distribution<double> lon(-90.0, -80.0);
  std::uniform_real_distribution<double> time(spec.min_time, spec.max_time);
  std::bernoulli_distribution has_arc(spec.arc_probability);

  const std::size_t n = count(rng);
  std::vector<Hub> hubs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id(1, static_cast<char>('A' + i));
    hubs.push_back(Hub{HubId(id), id, geo::GeoPoint(lat(rng), lon(rng)), false});
  }
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !has_arc(rng)) continue;
      double t = time(rng);
      if (spec.time_step > 0.0) t = std::max(spec.time_step, std::round(t / spec.time_step) * spec.time_step);
      const double d = geo::haversine_distance(hubs[i].location, hubs[j].location);
      arcs.push_back(Arc{hubs[i].id, hubs[j].id, t, d});
    }
  }
  return Network::build(std::move(hubs), std::move(arcs));
}

}  // namespace pirouting::testing
