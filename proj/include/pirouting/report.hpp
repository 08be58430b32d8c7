#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pirouting/discovery.hpp"
#include "pirouting/network.hpp"
#include "pirouting/pathfinding.hpp"
#include "pirouting/sim.hpp"

namespace pirouting {

using ojson = nlohmann::ordered_json;

inline ojson hub_array(const std::vector<HubId>& hubs) {
  auto arr = ojson::array();
  for (const auto& h : hubs) arr.push_back(h.str());
  return arr;
}

inline ojson to_json(const Path& p) {
  ojson j;
  j["hubs"] = hub_array(p.hubs);
  j["total_time_h"] = p.total_time;
  j["total_distance_mi"] = p.total_distance;
  return j;
}

inline ojson to_json(const CandidateSet& cs) {
  ojson j;
  j["result"] = "found";
  j["origin"] = cs.origin_of_search.str();
  j["destination"] = cs.destination.str();
  j["anchor_deg"] = cs.anchor.degrees();
  j["fallback_used"] = cs.fallback_used;
  ojson members = ojson::object();
  for (const auto& [h, m] : cs.members) {
    members[h.str()] = ojson{{"min_time_from_current_h", m.min_time_from_current},
                             {"min_time_to_dest_h", m.min_time_to_dest}};
  }
  j["members"] = std::move(members);
  j["next_hops"] = hub_array(cs.next_hops);
  j["expansions"] = cs.expansions;
  return j;
}

inline ojson to_json(const Infeasible& inf) {
  ojson j;
  j["result"] = "infeasible";
  j["shortfall_h"] = inf.shortfall;
  j["recommended_extension_h"] = inf.recommended_extension;
  return j;
}

inline ojson to_json(const DiscoveryOutcome& outcome) {
  return std::visit([](const auto& v) { return to_json(v); }, outcome);
}

inline ojson to_json(const KpiReport& r) {
  ojson j;
  j["mode"] = std::string(to_string(r.mode));
  j["shipment_count"] = r.shipment_count;
  j["delivered"] = r.delivered;
  j["delivered_on_time"] = r.delivered_on_time;
  j["delivered_on_time_pct"] = r.delivered_on_time_pct;
  j["undelivered"] = r.undelivered;
  j["infeasible"] = r.infeasible;
  j["extended"] = r.extended;
  j["trucks_dispatched"] = r.trucks_dispatched;
  j["total_miles"] = r.total_miles;
  j["mean_lateness_h"] = r.mean_lateness;
  j["max_lateness_h"] = r.max_lateness;
  j["scenario_fingerprint"] = r.scenario_fingerprint;
  return j;
}

/// One decimal with an explicit sign, e.g. "-10.7%", "+0.3%"; zero prints as "0.0%".
inline std::string format_delta_pct(double pct) {
  if (std::isnan(pct)) return "n/a";
  const double rounded = std::round(pct * 10.0) / 10.0;
  if (rounded == 0.0) return "0.0%";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.1f%%", rounded);
  return buf;
}

/// Rounded to a whole number with thousands separators: 132902.4 -> "132,902".
inline std::string format_thousands(double v) {
  const long long n = std::llround(v);
  std::string digits = std::to_string(n < 0 ? -n : n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return n < 0 ? "-" + out : out;
}

inline ojson to_json(const ComparisonReport& c) {
  ojson j;
  j["baseline"] = to_json(c.baseline);
  j["directional"] = to_json(c.directional);
  j["trucks_delta_pct"] = c.trucks_delta_pct;
  j["miles_delta_pct"] = c.miles_delta_pct;
  j["trucks_delta"] = format_delta_pct(c.trucks_delta_pct);
  j["miles_delta"] = format_delta_pct(c.miles_delta_pct);
  return j;
}

/// KPI table in the column layout of the published comparison, plus
/// lateness statistics. One row per routing scheme.
inline std::string render_comparison_table(const std::vector<ComparisonReport>& rows) {
  std::string out =
      "| Number of Shipments | Routing Scheme | Shipments Delivered On-time | Trucks Dispatched (Δ%) | "
      "Total Miles (Δ%) | Mean Lateness (h) | Max Lateness (h) |\n"
      "|---|---|---|---|---|---|---|\n";
  char buf[64];
  auto pct = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.1f%%", v);
    return std::string(buf);
  };
  auto hours = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  for (const auto& c : rows) {
    const auto& b = c.baseline;
    const auto& d = c.directional;
    out += "| " + std::to_string(b.shipment_count) + " | Baseline | " + pct(b.delivered_on_time_pct) + " | " +
           std::to_string(b.trucks_dispatched) + " | " + format_thousands(b.total_miles) + " | " +
           hours(b.mean_lateness) + " | " + hours(b.max_lateness) + " |\n";
    out += "|  | Directional | " + pct(d.delivered_on_time_pct) + " | " + std::to_string(d.trucks_dispatched) + " (" +
           format_delta_pct(c.trucks_delta_pct) + ") | " + format_thousands(d.total_miles) + " (" +
           format_delta_pct(c.miles_delta_pct) + ") | " + hours(d.mean_lateness) + " | " + hours(d.max_lateness) +
           " |\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// GeoJSON (RFC 7946): coordinates are [lon, lat].
// ---------------------------------------------------------------------------

namespace detail {

inline ojson position(const geo::GeoPoint& p) { return ojson::array({p.lon(), p.lat()}); }

inline ojson point_feature(const Hub& h, const char* role) {
  ojson f;
  f["type"] = "Feature";
  f["geometry"] = ojson{{"type", "Point"}, {"coordinates", position(h.location)}};
  f["properties"] = ojson{{"role", role}, {"id", h.id.str()}, {"name", h.name}};
  return f;
}

inline ojson line_feature(const Network& net, const std::vector<HubId>& hubs, const char* role) {
  auto coords = ojson::array();
  for (const auto& h : hubs) coords.push_back(position(net.hub(h).location));
  ojson f;
  f["type"] = "Feature";
  f["geometry"] = ojson{{"type", "LineString"}, {"coordinates", std::move(coords)}};
  f["properties"] = ojson{{"role", role}, {"hubs", hub_array(hubs)}};
  return f;
}

inline ojson collection(ojson features) {
  ojson fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = std::move(features);
  return fc;
}

}  // namespace detail

/// Path hubs as Points and the path as one LineString.
inline ojson geojson_path(const Network& net, const Path& path) {
  auto features = ojson::array();
  for (const auto& h : path.hubs) features.push_back(detail::point_feature(net.hub(h), "shortest_path"));
  if (path.hubs.size() >= 2) features.push_back(detail::line_feature(net, path.hubs, "shortest_path"));
  return detail::collection(std::move(features));
}

/// One Point per candidate member, one LineString per explored arc, and the
/// shortest path (when it has at least one hop) for reference.
inline ojson geojson_discovery(const Network& net, const CandidateSet& cs, const Path& sp) {
  auto features = ojson::array();
  for (const auto& [h, _] : cs.members) features.push_back(detail::point_feature(net.hub(h), "candidate_hub"));
  for (const auto& [u, v] : cs.explored_arcs) {
    features.push_back(detail::line_feature(net, {u, v}, "candidate_arc"));
  }
  if (sp.hubs.size() >= 2) features.push_back(detail::line_feature(net, sp.hubs, "shortest_path"));
  return detail::collection(std::move(features));
}

}  // namespace pirouting
