// gravent: rate budgets, bounds, sweeps and simulations for gravitational
// entanglement experiments.
//
// Exit codes: 0 success/feasible, 1 completed but infeasible (or a failed
// validation row), 2 invalid configuration or usage, 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gravent/gravent.hpp"

namespace {

using namespace gravent;
using io::Json;

enum Exit { kOk = 0, kInfeasible = 1, kConfig = 2, kNumerical = 3 };

struct Globals {
  bool json = false;
  bool quiet = false;
};

PhysicalConstants constants() {
  PhysicalConstants pc = kCodata;
#ifdef GRAVENT_DOCTORED_G
  // Test-only build: every result should move away from the reference numbers.
  pc.G *= 10.0;
#endif
  return pc;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

class Timer {
 public:
  explicit Timer(const Globals& g) : on_(!g.json && !g.quiet), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    if (!on_) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    std::cerr << "elapsed " << io::engineering(ms) << " ms\n";
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

int cmd_report(const Globals& g, const std::string& config_path) {
  const auto pc = constants();
  const ExperimentConfig cfg = io::load_config(config_path, pc);
  const RateBudget b = rate_budget(cfg, pc);
  if (g.json)
    emit(io::budget_to_json(b));
  else if (!g.quiet)
    io::print_budget(std::cout, b);
  return b.feasible ? kOk : kInfeasible;
}

struct BoundsArgs {
  std::string config;
  std::string unknown;
  std::string channel = "all";
  bool per_channel = false;
};

int cmd_bounds(const Globals& g, const BoundsArgs& a) {
  const auto pc = constants();
  const ExperimentConfig cfg = io::load_config(a.config, pc);
  const auto u = parse_unknown(a.unknown);
  if (!u) throw ConfigError("--unknown", "unknown parameter '" + a.unknown + "'");
  std::vector<ChannelId> channels;
  if (a.channel != "all") {
    const auto id = parse_channel(a.channel);
    if (!id) throw ConfigError("--channel", "unknown channel '" + a.channel + "'");
    channels.push_back(*id);
  }

  if (a.per_channel) {
    if (*u != Unknown::DeltaX) throw ConfigError("--per-channel", "only available for --unknown delta_x");
    const DelocalizationReport rep = required_delocalization(cfg, channels, pc);
    std::optional<double> eta;
    if (cfg.oscillator && rep.delta_x_min > 0.0) eta = eta_required(cfg, rep.delta_x_min, pc);
    if (g.json) {
      emit(io::delocalization_to_json(rep, eta));
    } else if (!g.quiet) {
      io::print_delocalization(std::cout, rep);
      if (eta) std::cout << "eta_required  " << io::engineering(*eta) << '\n';
    }
    return rep.feasible ? kOk : kInfeasible;
  }

  const BoundResult r = solve_bound(cfg, *u, channels, {}, pc);
  if (g.json)
    emit(io::bound_to_json(r));
  else if (!g.quiet)
    io::print_bound(std::cout, r);
  return kOk;
}

struct SweepArgs {
  std::string config;
  std::string spec;
  std::string out = ".";
  unsigned threads = 1;
};

int cmd_sweep(const Globals& g, const SweepArgs& a) {
  const Timer timer(g);
  const auto pc = constants();
  const ExperimentConfig cfg = io::load_config(a.config, pc);
  const SweepSpec spec = [&] {
    try {
      return io::sweep_from_json(io::parse_json_text(io::read_text_file(a.spec), a.spec), cfg);
    } catch (const ConfigError& e) {
      throw e.nested(a.spec);
    }
  }();
  const SweepGrid grid = run_sweep(spec, a.threads, pc);

  Frontier fr;
  std::string frontier_warning;
  try {
    fr = frontier(spec, grid, 1e-6, pc);
  } catch (const NumericalError& e) {
    frontier_warning = e.what();
  }

  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + a.out + "': " + ec.message());
  std::vector<std::string> files;
  auto write = [&](const char* name, auto&& fn) {
    const std::string path = (std::filesystem::path(a.out) / name).string();
    auto os = io::open_output(path);
    fn(os);
    io::check_written(os, path);
    files.push_back(path);
  };
  if (spec.outputs.grid_csv) write("grid.csv", [&](std::ostream& os) { io::write_grid_csv(os, grid); });
  if (spec.outputs.frontier_csv) write("frontier.csv", [&](std::ostream& os) { io::write_frontier_csv(os, grid, fr); });
  if (spec.outputs.svg) write("sweep.svg", [&](std::ostream& os) { io::write_svg(os, grid, fr); });

  const auto feasible_cells =
      std::count_if(grid.cells.begin(), grid.cells.end(), [](const SweepCell& c) { return c.valid && c.feasible; });
  if (g.json) {
    Json j{{"schema_version", io::kSchemaVersion},
           {"kind", "sweep"},
           {"cells", grid.cells.size()},
           {"feasible_cells", feasible_cells},
           {"invalid_fraction", grid.invalid_fraction()},
           {"frontier_points", fr.points.size()},
           {"notes", fr.notes},
           {"files", files}};
    j["warning"] = frontier_warning.empty() ? Json(nullptr) : Json(frontier_warning);
    emit(j);
  } else if (!g.quiet) {
    std::cout << grid.cells.size() << " cells, " << feasible_cells << " feasible, invalid fraction "
              << io::engineering(grid.invalid_fraction()) << '\n'
              << fr.points.size() << " frontier points\n";
    for (const auto& n : fr.notes) std::cout << "note: " << n << '\n';
    for (const auto& f : files) std::cout << "wrote " << f << '\n';
  }
  if (!frontier_warning.empty() && !g.quiet) std::cerr << "warning: " << frontier_warning << '\n';
  return kOk;
}

struct SimulateArgs {
  std::string config;
  std::string protocol;
  double t_max = 0.0;
  int samples = 101;
  std::string out;
  std::optional<double> gamma_dec;
  std::optional<double> coupling;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  const auto pc = constants();
  const ExperimentConfig cfg = io::load_config(a.config, pc);
  Protocol protocol = cfg.protocol;
  if (a.protocol == "csign")
    protocol = Protocol::CsignPhase;
  else if (a.protocol == "oscillator")
    protocol = Protocol::CoupledOscillators;
  else if (!a.protocol.empty())
    throw ConfigError("--protocol", "expected csign or oscillator");

  const SimTrace tr = protocol == Protocol::CsignPhase ? simulate_csign(cfg, a.t_max, a.samples, a.gamma_dec, pc)
                                                       : simulate_oscillator(cfg, a.t_max, a.samples, a.coupling, pc);
  const auto onset = entanglement_onset(tr);

  if (!a.out.empty()) {
    auto os = io::open_output(a.out);
    write_trace_csv(os, tr);
    io::check_written(os, a.out);
  } else if (!g.json) {
    write_trace_csv(std::cout, tr);
  }

  if (g.json) {
    Json j{{"schema_version", io::kSchemaVersion},
           {"kind", "simulation"},
           {"protocol", protocol == Protocol::CsignPhase ? "csign" : "oscillator"},
           {"samples", tr.size()},
           {"measure", tr.uses_negativity ? "negativity" : "E_N"},
           {"onset_level", kOnsetLevel}};
    j["onset_s"] = onset ? Json(*onset) : Json(nullptr);
    j["file"] = a.out.empty() ? Json(nullptr) : Json(a.out);
    emit(j);
  } else if (!g.quiet) {
    std::ostream& os = a.out.empty() ? std::cerr : std::cout;
    os << "onset: " << (onset ? io::engineering(*onset) + " s" : std::string("none")) << '\n';
  }
  return kOk;
}

int cmd_validate(const Globals& g, const std::string& csv_path) {
  const Timer timer(g);
  const auto rows = validate_paper_examples(constants());
  if (!csv_path.empty()) {
    auto os = io::open_output(csv_path);
    io::write_validation_csv(os, rows);
    io::check_written(os, csv_path);
  }
  if (g.json)
    emit(io::validation_to_json(rows));
  else if (!g.quiet)
    io::print_validation(std::cout, rows);
  return all_pass(rows) ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and decoherence rate budgets for gravitational entanglement experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_flag("--quiet", g.quiet, "Suppress human-readable output");

  std::string report_config;
  auto* report = app.add_subcommand("report", "Rate budget of one configuration");
  report->add_option("config", report_config, "Config JSON")->required();

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "Solve for the value of one parameter where the margin reaches 1");
  bounds->add_option("config", bounds_args.config, "Config JSON")->required();
  bounds->add_option("--unknown", bounds_args.unknown,
                     "delta_x | pressure | temp_env | temp_internal | radius | gamma | pos_noise | freq_noise | nbar")
      ->required();
  bounds->add_option("--channel", bounds_args.channel, "Channel name or 'all' (smallest margin over all channels)");
  bounds->add_flag("--per-channel", bounds_args.per_channel, "Per-channel delta_x table (delta_x only)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Two-parameter grid scan and feasibility frontier");
  sweep->add_option("config", sweep_args.config, "Config JSON")->required();
  sweep->add_option("spec", sweep_args.spec, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_args.out, "Output directory");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0: all cores)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Time trace of the entanglement measure");
  simulate->add_option("config", sim_args.config, "Config JSON")->required();
  simulate->add_option("--protocol", sim_args.protocol, "csign | oscillator (default: from config)");
  simulate->add_option("--t-max", sim_args.t_max, "Final time [s]")->required();
  simulate->add_option("--samples", sim_args.samples, "Number of samples, >= 2");
  simulate->add_option("--out", sim_args.out, "Trace CSV path (default: stdout)");
  simulate->add_option("--gamma-dec", sim_args.gamma_dec, "Per-particle decoherence rate [s^-1] (csign)");
  simulate->add_option("--coupling", sim_args.coupling, "x1 x2 coupling rate [s^-1] (oscillator)");

  std::string validate_csv;
  auto* validate = app.add_subcommand("validate", "Recompute the reference worked examples");
  validate->add_option("--csv", validate_csv, "Also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*report) return cmd_report(g, report_config);
    if (*bounds) return cmd_bounds(g, bounds_args);
    if (*sweep) return cmd_sweep(g, sweep_args);
    if (*simulate) return cmd_simulate(g, sim_args);
    if (*validate) return cmd_validate(g, validate_csv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const NoCrossingError& e) {
    std::cerr << "no crossing: " << e.what() << '\n';
    return kNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kNumerical;
  } catch (const StateError& e) {
    std::cerr << "state error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
