#pragma once

// Independent replay of a simulation event log. Works from the JSONL text
// alone: it rebuilds every shipment's state machine, checks the simulator's
// invariants, and re-aggregates the KPIs without touching simulator code.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace pirouting::testing {

struct ReplayResult {
  std::vector<std::string> violations;
  std::size_t events = 0;
  std::size_t shipments = 0;
  std::size_t trucks = 0;
  double miles = 0.0;
  std::size_t delivered = 0;
  std::size_t on_time = 0;
  std::size_t infeasible = 0;
  double max_lateness = 0.0;
  double lateness_sum = 0.0;
  std::map<std::string, std::vector<std::string>> realized_hubs;  // shipment -> hub sequence
  std::map<std::string, std::vector<std::string>> planned_paths;   // baseline only
};

inline ReplayResult replay_event_log(const std::string& jsonl, std::size_t truck_capacity, const std::string& mode) {
  ReplayResult r;
  auto fail = [&](const std::string& msg) {
    if (r.violations.size() < 50) r.violations.push_back(msg);
  };

  enum class Where { Queued, Aboard, Delivered };
  struct ShipmentState {
    Where where = Where::Queued;
    std::string hub;
    long trip = -1;
    std::string destination;
    double deadline = 0.0;
    double last_hop_time = -1.0;
    std::string chosen;
    std::vector<std::string> next_hops;
    bool infeasible = false;
  };
  struct TripState {
    std::string from, to;
    std::vector<std::string> shipments;
    double called = 0, ready = -1, departed = -1, arrived = -1, travel = 0;
  };
  std::map<std::string, ShipmentState> ships;
  std::map<long, TripState> trips;

  auto record_decision = [&](ShipmentState& s, const nlohmann::json& payload, const std::string& id) {
    const auto& d = payload.at("decision");
    if (d.contains("infeasible")) {
      s.infeasible = true;
      return;
    }
    s.chosen = d.at("chosen").get<std::string>();
    s.next_hops.clear();
    if (d.contains("next_hops")) {
      for (const auto& h : d["next_hops"]) s.next_hops.push_back(h.get<std::string>());
    } else {
      s.next_hops.push_back(s.chosen);
    }
    if (d.at("mode").get<std::string>() != mode) fail("decision mode mismatch for " + id);
  };
  auto hop = [&](ShipmentState& s, const std::string& id, const std::string& hub, double t) {
    if (!(t > s.last_hop_time)) fail("hop history not strictly increasing for " + id);
    s.last_hop_time = t;
    r.realized_hubs[id].push_back(hub);
  };

  std::istringstream in(jsonl);
  std::string line;
  double last_time = 0.0;
  long expected_seq = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto ev = nlohmann::json::parse(line);
    ++r.events;
    const double t = ev.at("time").get<double>();
    const long seq = ev.at("sequence").get<long>();
    const std::string kind = ev.at("kind").get<std::string>();
    const auto& p = ev.at("payload");
    if (t < 0.0) fail("negative event time");
    if (t < last_time) fail("event times decrease at sequence " + std::to_string(seq));
    if (seq != expected_seq) fail("sequence gap at " + std::to_string(seq));
    last_time = t;
    expected_seq = seq + 1;

    if (kind == "ShipmentCreated") {
      const auto id = p.at("shipment").get<std::string>();
      if (ships.contains(id)) fail("shipment created twice: " + id);
      auto& s = ships[id];
      s.where = Where::Queued;
      s.hub = p.at("origin").get<std::string>();
      s.destination = p.at("destination").get<std::string>();
      s.deadline = p.at("deadline").get<double>();
      if (s.hub == s.destination) fail("origin equals destination for " + id);
      hop(s, id, s.hub, t);
      if (p.contains("path")) {
        for (const auto& h : p["path"]) r.planned_paths[id].push_back(h.get<std::string>());
      }
      record_decision(s, p, id);
    } else if (kind == "ShipmentArrivedAtHub") {
      const auto id = p.at("shipment").get<std::string>();
      const auto hub = p.at("hub").get<std::string>();
      auto& s = ships[id];
      if (s.where != Where::Aboard) {
        fail("arrival of shipment not aboard a truck: " + id);
      } else {
        const auto& trip = trips[s.trip];
        if (trip.to != hub) fail("arrival hub differs from trip destination for " + id);
        if (trip.arrived < 0 || t < trip.arrived) fail("shipment arrived before its truck: " + id);
      }
      if (hub == s.destination) fail("destination arrival logged as hub arrival: " + id);
      s.where = Where::Queued;
      s.hub = hub;
      hop(s, id, hub, t);
      record_decision(s, p, id);
    } else if (kind == "TruckCalled") {
      const long id = p.at("trip").get<long>();
      if (trips.contains(id)) fail("trip called twice");
      auto& trip = trips[id];
      trip.from = p.at("from").get<std::string>();
      trip.to = p.at("to").get<std::string>();
      trip.called = t;
      for (const auto& sid : p.at("shipments")) trip.shipments.push_back(sid.get<std::string>());
      if (trip.shipments.empty()) fail("empty truck");
      if (trip.shipments.size() > truck_capacity) fail("truck over capacity: trip " + std::to_string(id));
      for (const auto& sid : trip.shipments) {
        auto& s = ships[sid];
        if (s.where != Where::Queued || s.hub != trip.from) fail("loaded shipment not queued at origin hub: " + sid);
        if (s.chosen != trip.to) fail("shipment " + sid + " rides away from its chosen next hop");
        if (std::find(s.next_hops.begin(), s.next_hops.end(), trip.to) == s.next_hops.end()) {
          fail("shipment " + sid + " hop " + trip.to + " is not among its next hops");
        }
        s.where = Where::Aboard;
        s.trip = id;
      }
    } else if (kind == "TruckReadyToLoad") {
      auto& trip = trips[p.at("trip").get<long>()];
      if (t < trip.called) fail("truck ready before call");
      trip.ready = t;
    } else if (kind == "TruckDeparted") {
      auto& trip = trips[p.at("trip").get<long>()];
      if (trip.ready < 0 || t < trip.ready) fail("truck departed before ready");
      trip.departed = t;
      trip.travel = p.at("travel_time").get<double>();
      ++r.trucks;
      r.miles += p.at("miles").get<double>();
    } else if (kind == "TruckArrived") {
      auto& trip = trips[p.at("trip").get<long>()];
      if (trip.departed < 0) fail("truck arrived without departing");
      if (std::abs((t - trip.departed) - trip.travel) > 1e-9) fail("trip duration differs from arc travel time");
      trip.arrived = t;
    } else if (kind == "ShipmentDelivered") {
      const auto id = p.at("shipment").get<std::string>();
      auto& s = ships[id];
      const auto hub = p.at("hub").get<std::string>();
      if (s.where != Where::Aboard || trips[s.trip].to != hub || trips[s.trip].arrived != t) {
        fail("delivery without matching truck arrival: " + id);
      }
      if (hub != s.destination) fail("delivered at wrong hub: " + id);
      s.where = Where::Delivered;
      hop(s, id, hub, t);
      ++r.delivered;
      if (t <= s.deadline) ++r.on_time;
      const double late = std::max(0.0, t - s.deadline);
      r.lateness_sum += late;
      r.max_lateness = std::max(r.max_lateness, late);
    } else if (kind == "InfeasibleRouteLogged") {
      if (!ships.contains(p.at("shipment").get<std::string>())) fail("infeasible note for unknown shipment");
    } else {
      fail("unknown event kind " + kind);
    }
  }

  r.shipments = ships.size();
  for (const auto& [id, s] : ships) {
    if (s.infeasible) {
      ++r.infeasible;
    } else if (s.where != Where::Delivered) {
      fail("shipment never delivered: " + id);
    }
  }
  if (mode == "baseline") {
    for (const auto& [id, path] : r.planned_paths) {
      if (ships[id].where == Where::Delivered && r.realized_hubs[id] != path) {
        fail("baseline shipment " + id + " deviated from its planned path");
      }
    }
  }
  return r;
}

}  // namespace pirouting::testing
