#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pirouting/discovery.hpp"
#include "pirouting/error.hpp"
#include "pirouting/network.hpp"
#include "pirouting/pathfinding.hpp"
#include "pirouting/policy.hpp"
#include "pirouting/rng.hpp"

namespace pirouting {

// ---------------------------------------------------------------------------
// Scenario types
// ---------------------------------------------------------------------------

enum class ServiceLevel : int { One = 1, Two = 2, Three = 3 };

constexpr double deadline_offset(ServiceLevel level) noexcept { return 24.0 * static_cast<int>(level); }

inline ServiceLevel service_level_from_int(int level) {
  if (level < 1 || level > 3) throw ConfigError("service level must be 1, 2 or 3");
  return static_cast<ServiceLevel>(level);
}

enum class ShipmentStatus { Pending, Queued, InTransit, Delivered, Infeasible };

struct Shipment {
  std::string id;
  HubId origin;
  HubId destination;
  ServiceLevel service = ServiceLevel::One;
  double created_at = 0.0;
  double deadline = 0.0;  // created_at + service offset; never moved by extensions

  ShipmentStatus status = ShipmentStatus::Pending;
  HubId location;
  std::vector<std::pair<HubId, double>> hop_history;
  double extension = 0.0;  // lead time granted on infeasible discoveries
  std::optional<double> delivered_at;

  double effective_deadline() const noexcept { return deadline + extension; }
  bool extended() const noexcept { return extension > 0.0; }
};

/// Protocol constants shared by both routing modes. Field names match the
/// scenario config file keys.
struct ScenarioConfig {
  std::size_t shipment_count = 0;
  double generation_window = 12.0;
  RoutingMode mode = RoutingMode::Baseline;
  double half_width = 50.0;
  std::size_t truck_capacity = 20;
  double truck_call_delay = 1.0;
  double load_time_base = 0.25;
  double load_time_per_shipment = 0.05;
  double handling_charge = 0.5;
  double wait_threshold = 4.0;
  double urgency_slack = 1.0;
  bool urgency_enabled = true;
  PolicyWeights weights;
  std::uint64_t seed = 1;

  void validate() const {
    auto non_negative = [](double v, const char* name) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be a finite value >= 0");
    };
    non_negative(generation_window, "generation_window");
    non_negative(truck_call_delay, "truck_call_delay");
    non_negative(load_time_base, "load_time_base");
    non_negative(load_time_per_shipment, "load_time_per_shipment");
    non_negative(handling_charge, "handling_charge");
    non_negative(wait_threshold, "wait_threshold");
    non_negative(urgency_slack, "urgency_slack");
    if (truck_capacity < 1) throw ConfigError("truck_capacity must be >= 1");
    if (!(half_width > 0.0 && half_width <= 180.0)) throw ConfigError("half_width must be in (0, 180]");
    weights.validate();
  }

  DiscoveryOptions discovery_options() const { return DiscoveryOptions{geo::SectorParams(half_width), handling_charge}; }
};

/// Shipments with uniform origin (non-terminal hubs), destination (terminals),
/// service level and creation time; sorted by creation time, ids in that order.
inline std::vector<Shipment> generate_shipments(const Network& net, const ScenarioConfig& cfg) {
  const auto origins = net.non_terminals();
  const auto terminals = net.terminals();
  if (terminals.empty()) throw ConfigError("network has no destination terminals");
  if (origins.size() < 2) throw ConfigError("network needs at least two non-terminal hubs");

  Rng rng(cfg.seed);
  std::vector<Shipment> out;
  out.reserve(cfg.shipment_count);
  for (std::size_t i = 0; i < cfg.shipment_count; ++i) {
    Shipment s;
    s.origin = origins[rng.index(origins.size())];
    s.destination = terminals[rng.index(terminals.size())];
    s.service = static_cast<ServiceLevel>(1 + rng.index(3));
    s.created_at = rng.uniform(0.0, cfg.generation_window);
    s.deadline = s.created_at + deadline_offset(s.service);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Shipment& a, const Shipment& b) { return a.created_at < b.created_at; });
  const std::size_t width = std::max<std::size_t>(5, std::to_string(out.size()).size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::string digits = std::to_string(i);
    out[i].id = "S" + std::string(width - digits.size(), '0') + digits;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hub queues and the dispatch protocol
// ---------------------------------------------------------------------------

struct QueueEntry {
  std::string shipment_id;
  std::vector<HubId> next_hops;  // candidate hops, shared with other shipments' policy
  HubId chosen;
  double enqueued_at = 0.0;
  double wait_due = 0.0;   // enqueued_at + wait threshold
  double urgent_at = 0.0;  // first instant the urgency trigger holds
};

struct HubQueue {
  HubId hub;
  std::vector<QueueEntry> entries;  // enqueue order
};

enum class DispatchTrigger { Capacity, Wait, Urgency };

constexpr std::string_view to_string(DispatchTrigger t) noexcept {
  switch (t) {
    case DispatchTrigger::Capacity: return "capacity";
    case DispatchTrigger::Wait: return "wait";
    case DispatchTrigger::Urgency: return "urgency";
  }
  return "";
}

struct DispatchCall {
  HubId next_hop;
  std::vector<std::string> shipment_ids;  // enqueue order
  DispatchTrigger trigger = DispatchTrigger::Capacity;
};

/// Groups the queue by chosen next hop and calls a truck for every group that
/// hits capacity, has waited out the threshold, or holds an urgent shipment.
/// An oversized group yields several calls; each remainder is re-tested on its
/// own triggers.
inline std::vector<DispatchCall> try_dispatch(const HubQueue& queue, double now, const ScenarioConfig& cfg) {
  std::map<HubId, std::vector<const QueueEntry*>> groups;
  for (const auto& e : queue.entries) groups[e.chosen].push_back(&e);

  std::vector<DispatchCall> calls;
  for (auto& [hop, members] : groups) {
    std::size_t start = 0;
    while (start < members.size()) {
      const std::size_t left = members.size() - start;
      std::optional<DispatchTrigger> trigger;
      if (left >= cfg.truck_capacity) {
        trigger = DispatchTrigger::Capacity;
      } else {
        double oldest_due = INFINITY;
        bool urgent = false;
        for (std::size_t i = start; i < members.size(); ++i) {
          oldest_due = std::min(oldest_due, members[i]->wait_due);
          urgent = urgent || now >= members[i]->urgent_at;
        }
        if (now >= oldest_due) {
          trigger = DispatchTrigger::Wait;
        } else if (urgent) {
          trigger = DispatchTrigger::Urgency;
        }
      }
      if (!trigger) break;
      DispatchCall call{hop, {}, *trigger};
      const std::size_t take = std::min(left, cfg.truck_capacity);
      for (std::size_t i = start; i < start + take; ++i) call.shipment_ids.push_back(members[i]->shipment_id);
      calls.push_back(std::move(call));
      start += take;
    }
  }
  return calls;
}

/// Earliest instant at which a time-based trigger fires for some entry.
inline std::optional<double> next_trigger_time(const HubQueue& queue) {
  std::optional<double> t;
  for (const auto& e : queue.entries) {
    const double due = std::min(e.wait_due, e.urgent_at);
    if (!t || due < *t) t = due;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Trips, events and KPIs
// ---------------------------------------------------------------------------

struct TruckTrip {
  std::size_t id = 0;
  HubId from;
  HubId to;
  std::vector<std::string> shipment_ids;
  DispatchTrigger trigger = DispatchTrigger::Capacity;
  double called_at = 0.0;
  double arrived_for_loading_at = 0.0;
  double departed_at = 0.0;
  double arrived_at = 0.0;
  double miles = 0.0;
};

enum class EventKind {
  ShipmentCreated,
  ShipmentArrivedAtHub,
  TruckCalled,
  TruckReadyToLoad,
  TruckDeparted,
  TruckArrived,
  ShipmentDelivered,
  InfeasibleRouteLogged,
};

constexpr std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::ShipmentCreated: return "ShipmentCreated";
    case EventKind::ShipmentArrivedAtHub: return "ShipmentArrivedAtHub";
    case EventKind::TruckCalled: return "TruckCalled";
    case EventKind::TruckReadyToLoad: return "TruckReadyToLoad";
    case EventKind::TruckDeparted: return "TruckDeparted";
    case EventKind::TruckArrived: return "TruckArrived";
    case EventKind::ShipmentDelivered: return "ShipmentDelivered";
    case EventKind::InfeasibleRouteLogged: return "InfeasibleRouteLogged";
  }
  return "";
}

struct EventRecord {
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::ShipmentCreated;
  nlohmann::ordered_json payload;
};

class EventLog {
 public:
  void append(double time, EventKind kind, nlohmann::ordered_json payload) {
    records_.push_back(EventRecord{time, records_.size(), kind, std::move(payload)});
  }

  const std::vector<EventRecord>& records() const noexcept { return records_; }

  /// One JSON object per line, fields in the order time, sequence, kind, payload.
  std::string to_jsonl() const {
    std::string out;
    for (const auto& r : records_) {
      nlohmann::ordered_json line;
      line["time"] = r.time;
      line["sequence"] = r.sequence;
      line["kind"] = std::string(to_string(r.kind));
      line["payload"] = r.payload;
      out += line.dump();
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<EventRecord> records_;
};

struct KpiReport {
  RoutingMode mode = RoutingMode::Baseline;
  std::size_t shipment_count = 0;
  std::size_t delivered = 0;
  std::size_t delivered_on_time = 0;
  std::size_t undelivered = 0;
  std::size_t infeasible = 0;
  std::size_t extended = 0;
  double delivered_on_time_pct = 0.0;
  std::size_t trucks_dispatched = 0;
  double total_miles = 0.0;
  double mean_lateness = 0.0;  // over delivered shipments, hours
  double max_lateness = 0.0;
  std::string scenario_fingerprint;  // identical for runs that differ only in mode
};

/// On-time means delivered no later than the original service deadline, so
/// shipments that needed a lead-time extension never count as on time.
inline KpiReport compute_kpis(const std::vector<TruckTrip>& trips, const std::vector<Shipment>& shipments,
                              RoutingMode mode) {
  KpiReport r;
  r.mode = mode;
  r.shipment_count = shipments.size();
  double lateness_sum = 0.0;
  for (const auto& s : shipments) {
    if (s.extended()) ++r.extended;
    if (s.status == ShipmentStatus::Infeasible) {
      ++r.infeasible;
    } else if (s.status == ShipmentStatus::Delivered && s.delivered_at) {
      ++r.delivered;
      const double late = std::max(0.0, *s.delivered_at - s.deadline);
      if (*s.delivered_at <= s.deadline) ++r.delivered_on_time;
      lateness_sum += late;
      r.max_lateness = std::max(r.max_lateness, late);
    }
  }
  r.undelivered = r.shipment_count - r.delivered - r.infeasible;
  r.delivered_on_time_pct = r.shipment_count == 0 ? 0.0 : 100.0 * r.delivered_on_time / r.shipment_count;
  r.mean_lateness = r.delivered == 0 ? 0.0 : lateness_sum / r.delivered;
  r.trucks_dispatched = trips.size();
  for (const auto& t : trips) r.total_miles += t.miles;
  return r;
}

struct ComparisonReport {
  KpiReport baseline;
  KpiReport directional;
  double trucks_delta_pct = 0.0;
  double miles_delta_pct = 0.0;
};

/// (directional - baseline) / baseline * 100; zero when both are zero.
inline double delta_pct(double baseline, double directional) {
  if (baseline == 0.0) return directional == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  return (directional - baseline) / baseline * 100.0;
}

inline ComparisonReport compare_runs(const KpiReport& baseline, const KpiReport& directional) {
  if (baseline.mode != RoutingMode::Baseline || directional.mode != RoutingMode::Directional) {
    throw MismatchedScenarios("compare_runs expects a baseline report and a directional report");
  }
  if (baseline.scenario_fingerprint != directional.scenario_fingerprint ||
      baseline.shipment_count != directional.shipment_count) {
    throw MismatchedScenarios("reports come from scenarios that differ beyond the routing mode");
  }
  return ComparisonReport{baseline, directional,
                          delta_pct(static_cast<double>(baseline.trucks_dispatched),
                                    static_cast<double>(directional.trucks_dispatched)),
                          delta_pct(baseline.total_miles, directional.total_miles)};
}

struct SimulationResult {
  KpiReport kpis;
  EventLog log;
  std::vector<TruckTrip> trips;
  std::vector<Shipment> shipments;
};

// ---------------------------------------------------------------------------
// Event loop
// ---------------------------------------------------------------------------

namespace detail {

class Simulator {
 public:
  Simulator(const Network& net, std::vector<Shipment> shipments, const ScenarioConfig& cfg)
      : net_(net), cfg_(cfg), opts_(cfg.discovery_options()), shipments_(std::move(shipments)) {
    for (std::size_t i = 0; i < shipments_.size(); ++i) {
      const auto& s = shipments_[i];
      if (!net_.contains(s.origin) || !net_.contains(s.destination)) {
        throw ConfigError("shipment " + s.id + " references a hub outside the network");
      }
      if (s.origin == s.destination) throw ConfigError("shipment " + s.id + " has origin == destination");
      index_.emplace(s.id, i);
    }
    if (index_.size() != shipments_.size()) throw ConfigError("duplicate shipment ids");
    hop_limit_ = 4 * net_.hub_count() + 4;
  }

  SimulationResult run() {
    for (std::size_t i = 0; i < shipments_.size(); ++i) {
      shipments_[i].status = ShipmentStatus::Pending;
      shipments_[i].hop_history.clear();
      shipments_[i].extension = 0.0;
      shipments_[i].delivered_at.reset();
      schedule(shipments_[i].created_at, Kind::Created, i, {});
    }
    while (!pending_.empty()) {
      Pending p = pending_.top();
      pending_.pop();
      dispatch_event(p);
    }
    for (const auto& s : shipments_) {
      if (s.status != ShipmentStatus::Delivered && s.status != ShipmentStatus::Infeasible) {
        throw StallDetected("event queue drained with shipment " + s.id + " undelivered");
      }
    }
    SimulationResult result;
    result.kpis = compute_kpis(trips_, shipments_, cfg_.mode);
    result.log = std::move(log_);
    result.trips = std::move(trips_);
    result.shipments = std::move(shipments_);
    return result;
  }

 private:
  enum class Kind { Created, Arrived, TruckReady, TruckDeparted, TruckArrived, Timer };

  struct Pending {
    double time;
    std::uint64_t order;
    Kind kind;
    std::size_t index;  // shipment or trip index
    HubId hub;

    bool operator>(const Pending& o) const { return std::tie(time, order) > std::tie(o.time, o.order); }
  };

  void schedule(double time, Kind kind, std::size_t index, HubId hub) {
    pending_.push(Pending{time, next_order_++, kind, index, std::move(hub)});
  }

  void dispatch_event(const Pending& p) {
    switch (p.kind) {
      case Kind::Created: on_created(p.time, p.index); break;
      case Kind::Arrived: on_arrived(p.time, p.index, p.hub); break;
      case Kind::TruckReady: on_truck_ready(p.time, p.index); break;
      case Kind::TruckDeparted: on_truck_departed(p.time, p.index); break;
      case Kind::TruckArrived: on_truck_arrived(p.time, p.index); break;
      case Kind::Timer:
        timers_[p.hub].erase(p.time);
        evaluate(p.hub, p.time);
        break;
    }
  }

  const MinTimeTable& table_for(const HubId& d) {
    auto it = tables_.find(d);
    if (it == tables_.end()) it = tables_.emplace(d, min_time_table(net_, d)).first;
    return it->second;
  }

  const Path& path_for(const Shipment& s) {
    auto key = std::make_pair(s.origin, s.destination);
    auto it = paths_.find(key);
    if (it == paths_.end()) it = paths_.emplace(key, shortest_path(net_, s.origin, s.destination)).first;
    return it->second;
  }

  static nlohmann::ordered_json scores_json(const NextHopDecision& d) {
    nlohmann::ordered_json scores;
    for (const auto& [h, sc] : d.score_breakdown) {
      scores[h.str()] = nlohmann::ordered_json{
          {"time_score", sc.time_score}, {"consolidation_score", sc.consolidation_score}, {"total", sc.total}};
    }
    return scores;
  }

  /// Fastest remaining travel from `hub` to `d` plus handling at the hubs in between.
  double remaining_need(const HubId& hub, const HubId& d) {
    if (hub == d) return 0.0;
    auto key = std::make_pair(hub, d);
    auto it = paths_.find(key);
    if (it == paths_.end()) it = paths_.emplace(key, shortest_path(net_, hub, d)).first;
    const auto& p = it->second;
    return p.total_time + cfg_.handling_charge * static_cast<double>(p.hubs.size() - 2);
  }

  static nlohmann::ordered_json hub_list(const std::vector<HubId>& hubs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& h : hubs) arr.push_back(h.str());
    return arr;
  }

  void on_created(double now, std::size_t i) {
    auto& s = shipments_[i];
    s.location = s.origin;
    s.hop_history.emplace_back(s.origin, now);
    nlohmann::ordered_json payload;
    payload["shipment"] = s.id;
    payload["origin"] = s.origin.str();
    payload["destination"] = s.destination.str();
    payload["service_level"] = static_cast<int>(s.service);
    payload["created_at"] = s.created_at;
    payload["deadline"] = s.deadline;
    if (cfg_.mode == RoutingMode::Baseline) payload["path"] = hub_list(path_for(s).hubs);
    route_and_enqueue(now, i, s.origin, EventKind::ShipmentCreated, std::move(payload));
  }

  void on_arrived(double now, std::size_t i, const HubId& hub) {
    auto& s = shipments_[i];
    s.location = hub;
    s.hop_history.emplace_back(hub, now);
    if (s.hop_history.size() > hop_limit_) {
      throw StallDetected("shipment " + s.id + " exceeded the hop limit (routing loop)");
    }
    nlohmann::ordered_json payload;
    payload["shipment"] = s.id;
    payload["hub"] = hub.str();
    route_and_enqueue(now, i, hub, EventKind::ShipmentArrivedAtHub, std::move(payload));
  }

  /// Runs the mode's routing decision, logs the arrival record (with the
  /// decision attached), then enqueues and evaluates dispatch at `hub`.
  void route_and_enqueue(double now, std::size_t i, const HubId& hub, EventKind kind,
                         nlohmann::ordered_json payload) {
    auto& s = shipments_[i];
    const auto& table = table_for(s.destination);
    auto& queue = queues_[hub];
    queue.hub = hub;

    QueueEntry entry;
    entry.shipment_id = s.id;
    std::vector<nlohmann::ordered_json> infeasible_notes;
    nlohmann::ordered_json decision;

    if (cfg_.mode == RoutingMode::Baseline) {
      entry.chosen = baseline_next_hop(path_for(s), hub);
      entry.next_hops = {entry.chosen};
      decision["mode"] = "baseline";
      decision["chosen"] = entry.chosen.str();
    } else {
      std::optional<CandidateSet> cs;
      for (int attempt = 0; attempt < 2 && !cs; ++attempt) {
        const RoutingBudget budget(std::max(0.0, s.effective_deadline() - now));
        auto outcome = rss_bfs(net_, table, hub, s.destination, budget, opts_);
        if (auto* found_set = std::get_if<CandidateSet>(&outcome)) {
          cs = std::move(*found_set);
          break;
        }
        const auto& inf = std::get<Infeasible>(outcome);
        nlohmann::ordered_json note;
        note["shipment"] = s.id;
        note["hub"] = hub.str();
        note["shortfall"] = inf.shortfall;
        note["recommended_extension"] = inf.recommended_extension;
        note["deadline_before"] = s.effective_deadline();
        // The budget bottoms out at zero, so a shipment that is already past
        // its deadline also needs the overdue time back.
        const double overdue = std::max(0.0, now - s.effective_deadline());
        const double granted = overdue > 0.0 ? std::ceil(inf.shortfall + overdue) : inf.recommended_extension;
        note["granted_extension"] = granted;
        s.extension += granted;
        note["deadline_after"] = s.effective_deadline();
        infeasible_notes.push_back(std::move(note));
      }
      if (!cs) {
        s.status = ShipmentStatus::Infeasible;
        payload["decision"] = nlohmann::ordered_json{{"mode", "directional"}, {"infeasible", true}};
        log_.append(now, kind, std::move(payload));
        for (auto& note : infeasible_notes) log_.append(now, EventKind::InfeasibleRouteLogged, std::move(note));
        return;
      }
      const auto choice = directional_next_hop(net_, *cs, table, queue.entries, s.id, cfg_.weights);
      entry.chosen = choice.chosen;
      entry.next_hops = cs->next_hops;
      decision["mode"] = "directional";
      decision["chosen"] = entry.chosen.str();
      decision["next_hops"] = hub_list(cs->next_hops);
      decision["anchor"] = cs->anchor.degrees();
      decision["fallback_used"] = cs->fallback_used;
      decision["scores"] = scores_json(choice);
    }
    payload["decision"] = std::move(decision);
    log_.append(now, kind, std::move(payload));
    for (auto& note : infeasible_notes) log_.append(now, EventKind::InfeasibleRouteLogged, std::move(note));

    // Urgency looks at the fastest way on from this hub, not at the current
    // choice, so it does not move when the choice is revised.
    const double committed =
        cfg_.truck_call_delay + cfg_.load_time_base + cfg_.load_time_per_shipment + remaining_need(hub, s.destination);
    entry.enqueued_at = now;
    entry.wait_due = now + cfg_.wait_threshold;
    entry.urgent_at = cfg_.urgency_enabled ? s.effective_deadline() - committed - cfg_.urgency_slack : INFINITY;
    s.status = ShipmentStatus::Queued;
    queue.entries.push_back(std::move(entry));
    evaluate(hub, now);
  }

  void evaluate(const HubId& hub, double now) {
    auto qit = queues_.find(hub);
    if (qit == queues_.end()) return;
    auto& queue = qit->second;

    for (auto& call : try_dispatch(queue, now, cfg_)) {
      const Arc* arc = net_.find_arc(hub, call.next_hop);
      TruckTrip trip;
      trip.id = trips_.size();
      trip.from = hub;
      trip.to = call.next_hop;
      trip.shipment_ids = call.shipment_ids;
      trip.trigger = call.trigger;
      trip.called_at = now;
      trip.arrived_for_loading_at = now + cfg_.truck_call_delay;
      trip.miles = arc->distance;

      std::set<std::string> taken(call.shipment_ids.begin(), call.shipment_ids.end());
      std::erase_if(queue.entries, [&](const QueueEntry& e) { return taken.contains(e.shipment_id); });
      for (const auto& id : call.shipment_ids) shipments_[index_.at(id)].status = ShipmentStatus::InTransit;

      nlohmann::ordered_json payload;
      payload["trip"] = trip.id;
      payload["from"] = trip.from.str();
      payload["to"] = trip.to.str();
      payload["shipments"] = call.shipment_ids;
      payload["trigger"] = std::string(to_string(call.trigger));
      log_.append(now, EventKind::TruckCalled, std::move(payload));
      schedule(trip.arrived_for_loading_at, Kind::TruckReady, trip.id, {});
      trips_.push_back(std::move(trip));
    }

    if (auto due = next_trigger_time(queue)) {
      auto& pending = timers_[hub];
      if (*due > now && !pending.contains(*due)) {
        pending.insert(*due);
        schedule(*due, Kind::Timer, 0, hub);
      }
    }
  }

  void on_truck_ready(double now, std::size_t t) {
    auto& trip = trips_[t];
    const double load = cfg_.load_time_base + cfg_.load_time_per_shipment * static_cast<double>(trip.shipment_ids.size());
    trip.departed_at = now + load;
    nlohmann::ordered_json payload;
    payload["trip"] = trip.id;
    payload["hub"] = trip.from.str();
    payload["load_count"] = trip.shipment_ids.size();
    log_.append(now, EventKind::TruckReadyToLoad, std::move(payload));
    schedule(trip.departed_at, Kind::TruckDeparted, t, {});
    evaluate(trip.from, now);
  }

  void on_truck_departed(double now, std::size_t t) {
    auto& trip = trips_[t];
    const Arc* arc = net_.find_arc(trip.from, trip.to);
    trip.arrived_at = now + arc->travel_time;
    nlohmann::ordered_json payload;
    payload["trip"] = trip.id;
    payload["from"] = trip.from.str();
    payload["to"] = trip.to.str();
    payload["shipments"] = trip.shipment_ids;
    payload["miles"] = trip.miles;
    payload["travel_time"] = arc->travel_time;
    log_.append(now, EventKind::TruckDeparted, std::move(payload));
    schedule(trip.arrived_at, Kind::TruckArrived, t, {});
    evaluate(trip.from, now);
  }

  void on_truck_arrived(double now, std::size_t t) {
    const auto& trip = trips_[t];
    nlohmann::ordered_json payload;
    payload["trip"] = trip.id;
    payload["hub"] = trip.to.str();
    payload["shipments"] = trip.shipment_ids;
    log_.append(now, EventKind::TruckArrived, std::move(payload));

    for (const auto& id : trip.shipment_ids) {
      const std::size_t i = index_.at(id);
      auto& s = shipments_[i];
      if (trip.to == s.destination) {
        s.status = ShipmentStatus::Delivered;
        s.location = trip.to;
        s.delivered_at = now;
        s.hop_history.emplace_back(trip.to, now);
        nlohmann::ordered_json d;
        d["shipment"] = s.id;
        d["hub"] = trip.to.str();
        d["trip"] = trip.id;
        d["deadline"] = s.deadline;
        d["on_time"] = now <= s.deadline;
        d["extended"] = s.extended();
        d["lateness"] = std::max(0.0, now - s.deadline);
        log_.append(now, EventKind::ShipmentDelivered, std::move(d));
      } else {
        // Unloading and transshipment handling precede availability at the hub.
        schedule(now + cfg_.handling_charge, Kind::Arrived, i, trip.to);
      }
    }
    evaluate(trip.to, now);
  }

  const Network& net_;
  ScenarioConfig cfg_;
  DiscoveryOptions opts_;
  std::vector<Shipment> shipments_;
  std::map<std::string, std::size_t> index_;
  std::size_t hop_limit_ = 0;

  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending_;
  std::uint64_t next_order_ = 0;
  std::map<HubId, HubQueue> queues_;
  std::map<HubId, std::set<double>> timers_;
  std::map<HubId, MinTimeTable> tables_;
  std::map<std::pair<HubId, HubId>, Path> paths_;
  std::vector<TruckTrip> trips_;
  EventLog log_;
};

}  // namespace detail

/// Runs one scenario to completion. Single-threaded and RNG-free: identical
/// inputs give identical logs. Throws StallDetected if shipments are left
/// undelivered when no events remain.
inline SimulationResult run_simulation(const Network& net, std::vector<Shipment> shipments,
                                       const ScenarioConfig& cfg) {
  cfg.validate();
  return detail::Simulator(net, std::move(shipments), cfg).run();
}

}  // namespace pirouting
