// pirouting: network generation, routing queries and scenario runs.
//
//   pirouting net gen [--hubs N] [--k K] [--terminals T] [--seed S] [-o FILE]
//   pirouting net validate --network FILE
//   pirouting route sp --network FILE --from A --to B [--geojson FILE]
//   pirouting route discover --network FILE --from A --to B --budget H [--half-width DEG]
//   pirouting sim run|compare [--network FILE] [--config FILE] [--seed S] [--out-dir DIR]
//
// Exit codes: 0 success (Infeasible verdicts included), 1 usage error,
// 2 invalid input, 3 internal consistency failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pirouting/pirouting.hpp"

namespace fs = std::filesystem;
using namespace pirouting;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::Generation:
    case ErrorKind::Config:
    case ErrorKind::UnknownHub:
    case ErrorKind::NoPath:
    case ErrorKind::NotOnPath:
    case ErrorKind::AlreadyAtDestination:
    case ErrorKind::DegenerateBearing:
    case ErrorKind::AmbiguousMidpoint:
      return kExitInvalid;
    default:
      return kExitInternal;
  }
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

/// Everything needed to rerun a command bit-for-bit, written beside its outputs.
struct RunManifest {
  std::string command;
  std::optional<std::uint64_t> seed;
  ojson inputs = ojson::object();   // name -> content digest
  ojson outputs = ojson::array();   // {path, digest}

  void add_output(const std::string& path, const std::string& content) {
    outputs.push_back(ojson{{"path", path}, {"digest", content_digest(content)}});
  }

  std::string render() const {
    ojson j;
    j["tool"] = "pirouting";
    j["version"] = std::string(kVersion);
    j["command"] = command;
    j["seed"] = seed ? ojson(*seed) : ojson(nullptr);
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    return dump(j);
  }
};

struct Options {
  // shared
  std::string network_file;
  std::string config_file;
  std::string out_dir = "pirouting_out";
  std::string geojson_file;
  std::string output_file;
  std::optional<std::uint64_t> seed;
  std::string command_line;

  // net gen
  std::size_t hubs = 30;
  std::size_t k_nearest = 3;
  std::size_t terminals = 2;
  std::uint64_t network_seed = 7;

  // route
  std::string from;
  std::string to;
  std::optional<double> budget;
  std::optional<double> half_width;
  std::optional<double> handling;

  // sim
  std::optional<std::string> mode;
  std::optional<std::size_t> shipments;
};

std::string render_command(const std::vector<std::string>& args) {
  std::string out = "pirouting";
  for (const auto& a : args) out += " " + a;
  return out;
}

GeneratorParams generator_params(const Options& o) {
  if (o.hubs < 2) throw ConfigError("--hubs must be at least 2");
  GeneratorParams p;
  p.hub_count = o.hubs;
  p.k_nearest = o.k_nearest;
  p.terminal_count = o.terminals;
  return p;
}

// ---------------------------------------------------------------------------
// net
// ---------------------------------------------------------------------------

int cmd_net_gen(const Options& o) {
  const std::uint64_t seed = o.seed.value_or(o.network_seed);
  const auto params = generator_params(o);
  const auto text = emit(generate_network(params, seed));
  if (o.output_file.empty()) {
    std::cout << text;
    return 0;
  }
  write_file(o.output_file, text);
  RunManifest m;
  m.command = o.command_line;
  m.seed = seed;
  m.inputs["generator"] = content_digest(ojson{{"hubs", params.hub_count},
                                               {"k_nearest", params.k_nearest},
                                               {"terminals", params.terminal_count},
                                               {"speed_mph", params.speed_mph}}
                                             .dump());
  m.add_output(fs::path(o.output_file).filename().string(), text);
  write_file(o.output_file + ".manifest.json", m.render());
  return 0;
}

int cmd_net_validate(const Options& o) {
  const auto doc = parse_json_text(read_text_file(o.network_file));
  const auto violations = validate_network_document(doc);
  if (!violations.empty()) throw ValidationError(violations);
  const auto net = load_network(doc);
  std::cout << "ok: " << net.hub_count() << " hubs, " << net.arc_count() << " arcs, " << net.terminals().size()
            << " terminals\n";
  return 0;
}

// ---------------------------------------------------------------------------
// route
// ---------------------------------------------------------------------------

void write_geojson(const Options& o, const Network& net, const ojson& fc) {
  const auto text = dump(fc);
  write_file(o.geojson_file, text);
  RunManifest m;
  m.command = o.command_line;
  m.inputs["network"] = content_digest(emit(net));
  m.add_output(fs::path(o.geojson_file).filename().string(), text);
  write_file(o.geojson_file + ".manifest.json", m.render());
}

int cmd_route_sp(const Options& o) {
  const auto net = load_network_file(o.network_file);
  const auto path = shortest_path(net, HubId(o.from), HubId(o.to));
  std::cout << dump(to_json(path));
  if (!o.geojson_file.empty()) write_geojson(o, net, geojson_path(net, path));
  return 0;
}

int cmd_route_discover(const Options& o) {
  const auto net = load_network_file(o.network_file);
  const HubId from(o.from);
  const HubId to(o.to);
  const auto sp = shortest_path(net, from, to);  // NoPath / UnknownHub surface here
  const auto table = min_time_table(net, to);
  DiscoveryOptions opts{geo::SectorParams(o.half_width.value_or(50.0)), o.handling.value_or(0.5)};
  if (!(opts.handling_charge >= 0.0)) throw ConfigError("--handling must be >= 0");
  const RoutingBudget budget(o.budget.value_or(sp.total_time * 2.0 + 24.0));
  const auto outcome = rss_bfs(net, table, from, to, budget, opts);

  auto report = to_json(outcome);
  report["budget_h"] = budget.remaining();
  report["half_width_deg"] = opts.sector.half_width();
  report["shortest_path"] = to_json(sp);
  std::cout << dump(report);
  if (!o.geojson_file.empty()) {
    if (const auto* cs = found(outcome)) {
      write_geojson(o, net, geojson_discovery(net, *cs, sp));
    } else {
      write_geojson(o, net, geojson_path(net, sp));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sim
// ---------------------------------------------------------------------------

struct SimInputs {
  Network net;
  ScenarioConfig cfg;
  std::vector<Shipment> shipments;
  RunManifest manifest;
};

/// Defaults, then the config file, then flags.
SimInputs prepare_sim(const Options& o) {
  ScenarioConfig cfg;
  if (!o.config_file.empty()) apply_config_json(cfg, parse_json_text(read_text_file(o.config_file)));
  if (o.seed) cfg.seed = *o.seed;
  if (o.shipments) cfg.shipment_count = *o.shipments;
  if (o.mode) cfg.mode = parse_routing_mode(*o.mode);
  if (o.half_width) cfg.half_width = *o.half_width;
  if (o.handling) cfg.handling_charge = *o.handling;
  cfg.validate();

  auto net = o.network_file.empty() ? generate_network(generator_params(o), o.network_seed)
                                    : load_network_file(o.network_file);
  auto shipments = generate_shipments(net, cfg);

  RunManifest m;
  m.command = o.command_line;
  m.seed = cfg.seed;
  m.inputs["config"] = content_digest(to_json(cfg).dump());
  m.inputs["network"] = content_digest(emit(net));
  m.inputs["shipments"] = content_digest(shipments_to_json(shipments).dump());
  return SimInputs{std::move(net), cfg, std::move(shipments), std::move(m)};
}

class OutDir {
 public:
  OutDir(fs::path dir, RunManifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    write_file(dir_ / name, content);
    manifest_.add_output(name, content);
  }

  void finish() { write_file(dir_ / "manifest.json", manifest_.render()); }

 private:
  fs::path dir_;
  RunManifest& manifest_;
};

void write_common(OutDir& out, const SimInputs& in) {
  out.write("network.json", emit(in.net));
  out.write("scenario.json", dump(to_json(in.cfg)));
  out.write("shipments.json", dump(shipments_to_json(in.shipments)));
}

int cmd_sim_run(const Options& o) {
  auto in = prepare_sim(o);
  const auto result = run_scenario(in.net, in.shipments, in.cfg);
  OutDir out(o.out_dir, in.manifest);
  write_common(out, in);
  out.write("events.jsonl", result.log.to_jsonl());
  const auto kpi = dump(to_json(result.kpis));
  out.write("kpi.json", kpi);
  out.finish();
  std::cout << kpi;
  return 0;
}

int cmd_sim_compare(const Options& o) {
  if (o.mode) throw ConfigError("sim compare runs both modes; drop --mode");
  auto in = prepare_sim(o);
  auto cfg_base = in.cfg;
  cfg_base.mode = RoutingMode::Baseline;
  auto cfg_dir = in.cfg;
  cfg_dir.mode = RoutingMode::Directional;

  // Both runs receive copies of the one generated list; record what each saw.
  const auto& fed_base = in.shipments;
  const auto& fed_dir = in.shipments;
  in.manifest.inputs["shipments_baseline"] = content_digest(shipments_to_json(fed_base).dump());
  in.manifest.inputs["shipments_directional"] = content_digest(shipments_to_json(fed_dir).dump());

  const auto base = run_scenario(in.net, fed_base, cfg_base);
  const auto dir = run_scenario(in.net, fed_dir, cfg_dir);
  const auto cmp = compare_runs(base.kpis, dir.kpis);
  const auto table = render_comparison_table({cmp});

  OutDir out(o.out_dir, in.manifest);
  write_common(out, in);
  out.write("events_baseline.jsonl", base.log.to_jsonl());
  out.write("events_directional.jsonl", dir.log.to_jsonl());
  out.write("kpi_baseline.json", dump(to_json(base.kpis)));
  out.write("kpi_directional.json", dump(to_json(dir.kpis)));
  out.write("comparison.json", dump(to_json(cmp)));
  out.write("comparison.md", table);
  out.finish();
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional hub routing: networks, routing queries and simulations"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options o;
  std::vector<std::string> raw(argv + 1, argv + argc);
  o.command_line = render_command(raw);

  auto seed_flag = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Random seed"); };
  auto network_flag = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--network", o.network_file, "Network document (JSON)");
    if (required) opt->required();
  };

  auto* net = app.add_subcommand("net", "Generate or validate hub networks");
  net->require_subcommand(1);
  auto* net_gen = net->add_subcommand("gen", "Generate a synthetic network");
  net_gen->add_option("--hubs", o.hubs, "Number of hubs")->capture_default_str();
  net_gen->add_option("--k", o.k_nearest, "Nearest neighbours linked per hub")->capture_default_str();
  net_gen->add_option("--terminals", o.terminals, "Number of destination terminals")->capture_default_str();
  net_gen->add_option("-o,--output", o.output_file, "Output file (stdout if omitted)");
  seed_flag(net_gen);
  auto* net_validate = net->add_subcommand("validate", "Check a network document and list every violation");
  network_flag(net_validate, true);

  auto* route = app.add_subcommand("route", "One-shot routing queries");
  route->require_subcommand(1);
  auto* route_sp = route->add_subcommand("sp", "Minimum-time path");
  auto* route_discover = route->add_subcommand("discover", "Directional candidate-area discovery");
  for (auto* c : {route_sp, route_discover}) {
    network_flag(c, true);
    c->add_option("--from", o.from, "Origin hub")->required();
    c->add_option("--to", o.to, "Destination hub")->required();
    c->add_option("--geojson", o.geojson_file, "Write a GeoJSON FeatureCollection");
  }
  route_discover->add_option("--budget", o.budget, "Remaining time budget in hours");
  route_discover->add_option("--half-width", o.half_width, "Sector half-width in degrees");
  route_discover->add_option("--handling", o.handling, "Handling charge per intermediate hub, hours");

  auto* sim = app.add_subcommand("sim", "Scenario simulation");
  sim->require_subcommand(1);
  auto* sim_run = sim->add_subcommand("run", "Simulate one routing mode");
  auto* sim_compare = sim->add_subcommand("compare", "Simulate both modes on the same shipments");
  for (auto* c : {sim_run, sim_compare}) {
    network_flag(c, false);
    seed_flag(c);
    c->add_option("--config", o.config_file, "Scenario config (JSON)");
    c->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
    c->add_option("--shipments", o.shipments, "Number of shipments");
    c->add_option("--half-width", o.half_width, "Sector half-width in degrees");
    c->add_option("--handling", o.handling, "Handling charge per intermediate hub, hours");
    c->add_option("--hubs", o.hubs, "Hub count when generating the network")->capture_default_str();
    c->add_option("--network-seed", o.network_seed, "Seed when generating the network")->capture_default_str();
  }
  sim_run->add_option("--mode", o.mode, "baseline or directional");
  sim_compare->add_option("--mode", o.mode, "Not accepted; compare runs both modes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[UsageError]: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*net_gen) return cmd_net_gen(o);
    if (*net_validate) return cmd_net_validate(o);
    if (*route_sp) return cmd_route_sp(o);
    if (*route_discover) return cmd_route_discover(o);
    if (*sim_run) return cmd_sim_run(o);
    if (*sim_compare) return cmd_sim_compare(o);
    std::cerr << "error[UsageError]: no command given\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error[InternalError]: " << e.what() << "\n";
    return kExitInternal;
  }
}
