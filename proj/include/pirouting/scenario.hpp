#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pirouting/digest.hpp"
#include "pirouting/error.hpp"
#include "pirouting/network_io.hpp"
#include "pirouting/sim.hpp"

namespace pirouting {

inline nlohmann::ordered_json to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["shipment_count"] = c.shipment_count;
  j["generation_window"] = c.generation_window;
  j["mode"] = std::string(to_string(c.mode));
  j["half_width"] = c.half_width;
  j["truck_capacity"] = c.truck_capacity;
  j["truck_call_delay"] = c.truck_call_delay;
  j["load_time_base"] = c.load_time_base;
  j["load_time_per_shipment"] = c.load_time_per_shipment;
  j["handling_charge"] = c.handling_charge;
  j["wait_threshold"] = c.wait_threshold;
  j["urgency_slack"] = c.urgency_slack;
  j["urgency_enabled"] = c.urgency_enabled;
  j["w_time"] = c.weights.w_time;
  j["w_consolidation"] = c.weights.w_consolidation;
  j["seed"] = c.seed;
  return j;
}

/// Overlays the keys present in `doc` onto `cfg`. Unknown keys are rejected so
/// a misspelled field cannot silently fall back to its default.
inline void apply_config_json(ScenarioConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("scenario config must be an object");
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "shipment_count") cfg.shipment_count = value.get<std::size_t>();
      else if (key == "generation_window") cfg.generation_window = value.get<double>();
      else if (key == "mode") cfg.mode = parse_routing_mode(value.get<std::string>());
      else if (key == "half_width") cfg.half_width = value.get<double>();
      else if (key == "truck_capacity") cfg.truck_capacity = value.get<std::size_t>();
      else if (key == "truck_call_delay") cfg.truck_call_delay = value.get<double>();
      else if (key == "load_time_base") cfg.load_time_base = value.get<double>();
      else if (key == "load_time_per_shipment") cfg.load_time_per_shipment = value.get<double>();
      else if (key == "handling_charge") cfg.handling_charge = value.get<double>();
      else if (key == "wait_threshold") cfg.wait_threshold = value.get<double>();
      else if (key == "urgency_slack") cfg.urgency_slack = value.get<double>();
      else if (key == "urgency_enabled") cfg.urgency_enabled = value.get<bool>();
      else if (key == "w_time") cfg.weights.w_time = value.get<double>();
      else if (key == "w_consolidation") cfg.weights.w_consolidation = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else throw ConfigError("unknown scenario config key: " + key);
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("scenario config key '" + key + "' has the wrong type");
    }
  }
}

inline nlohmann::ordered_json shipments_to_json(const std::vector<Shipment>& shipments) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : shipments) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["origin"] = s.origin.str();
    j["destination"] = s.destination.str();
    j["service_level"] = static_cast<int>(s.service);
    j["created_at"] = s.created_at;
    j["deadline"] = s.deadline;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::vector<Shipment> shipments_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw ParseError("shipment list must be an array");
  std::vector<Shipment> out;
  for (const auto& j : doc) {
    try {
      Shipment s;
      s.id = j.at("id").get<std::string>();
      s.origin = HubId(j.at("origin").get<std::string>());
      s.destination = HubId(j.at("destination").get<std::string>());
      s.service = service_level_from_int(j.at("service_level").get<int>());
      s.created_at = j.at("created_at").get<double>();
      s.deadline = s.created_at + deadline_offset(s.service);
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed shipment entry: ") + e.what());
    }
  }
  return out;
}

/// Digest of everything a run depends on except the routing mode.
inline std::string scenario_fingerprint(const Network& net, const std::vector<Shipment>& shipments,
                                        const ScenarioConfig& cfg) {
  auto c = to_json(cfg);
  c.erase("mode");
  return content_digest(emit(net) + shipments_to_json(shipments).dump() + c.dump());
}

/// run_simulation plus the scenario fingerprint compare_runs relies on.
inline SimulationResult run_scenario(const Network& net, const std::vector<Shipment>& shipments,
                                     const ScenarioConfig& cfg) {
  auto fingerprint = scenario_fingerprint(net, shipments, cfg);
  auto result = run_simulation(net, shipments, cfg);
  result.kpis.scenario_fingerprint = std::move(fingerprint);
  return result;
}

}  // namespace pirouting
