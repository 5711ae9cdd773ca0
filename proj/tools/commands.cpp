#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwp/analysis.hpp"
#include "gwp/baselines.hpp"
#include "gwp/error.hpp"
#include "gwp/experiment.hpp"
#include "gwp/placement.hpp"
#include "gwp/scenario.hpp"
#include "gwp/sim.hpp"

namespace gwp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad seed '" + std::string(s) + "'");
  }
  return v;
}

struct ScenarioArgs {
  std::string scenario;
  std::uint64_t scenario_seed = 1;
  std::string mcs_table;
  std::optional<double> duration_s;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("--scenario", a.scenario, "Builtin name (scenario-a, scenario-b-90-10, scenario-b-75-25) or JSON file")
      ->required();
  cmd->add_option("--scenario-seed", a.scenario_seed, "Geometry seed of builtin two-zone scenarios");
  cmd->add_option("--mcs-table", a.mcs_table, "CSV rate table (index,data_rate_bps,min_snr_db)");
  cmd->add_option("--duration", a.duration_s, "Run length in seconds")->check(CLI::PositiveNumber);
}

Scenario load_scenario_arg(const ScenarioArgs& a) {
  Scenario s;
  const auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), a.scenario) != names.end()) {
    s = builtin_scenario(a.scenario, a.scenario_seed);
  } else {
    if (!fs::exists(a.scenario)) throw IoError("no such builtin scenario or file: " + a.scenario);
    s = load_scenario(a.scenario);
  }
  if (!a.mcs_table.empty()) {
    if (!fs::exists(a.mcs_table)) throw IoError("cannot open MCS table: " + a.mcs_table);
    s.mcs_table = McsTable::load(a.mcs_table);
  }
  if (a.duration_s) s = with_duration(s, *a.duration_s);
  s.validate();
  return s;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  f << content;
  if (!f) throw IoError("write failed: " + path.string());
}

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

std::string format_seconds(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

// generate

struct GenerateArgs {
  std::string kind;
  int faps = 10;
  std::optional<double> l2_frac;
  double ratio = 3.0;
  std::uint64_t seed = 1;
  std::vector<double> size{80.0, 80.0, 20.0};
  double duration_s = 130.0;
  bool mobile = false;
  std::optional<double> capacity_factor;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  Scenario s;
  if (a.kind == "scenario-a") {
    ScenarioAOptions o;
    if (a.l2_frac) o.demand_high_fraction = *a.l2_frac;
    o.ratio = a.ratio;
    o.duration_s = a.duration_s;
    if (a.capacity_factor) o.capacity_factor = *a.capacity_factor;
    s = scenario_a(o);
  } else if (a.kind == "scenario-b") {
    if (!a.l2_frac) throw CLI::RequiredError("--l2-frac");
    const double share = fair_share(a.faps + 1);
    TwoZoneOptions o;
    o.mobile = a.mobile;
    o.capacity_factor = a.capacity_factor;
    const Cuboid venue = Cuboid::from_extent(a.size[0], a.size[1], a.size[2]);
    const double lambda2 = *a.l2_frac * share;
    s = generate_two_zone(a.faps, venue, share - lambda2, lambda2, a.duration_s, a.seed, o);
    std::ostringstream name;
    name << "scenario-b-n" << a.faps << "-l2-" << *a.l2_frac << "-seed" << a.seed;
    s.name = name.str();
  } else {
    s = with_duration(builtin_scenario(a.kind, a.seed), a.duration_s);
  }
  s.validate();
  const std::string text = scenario_to_json(s) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return kOk;
}

// solve

struct SolveArgs {
  ScenarioArgs scenario;
  std::string out;
};

json solution_json(const PlanStep& step) {
  const PlacementSolution& sol = *step.solution;
  json constraints = json::array();
  for (std::size_t i = 0; i < sol.constraints.size(); ++i) {
    const auto& c = sol.constraints[i];
    constraints.push_back({{"fap_id", c.fap_id},
                           {"center", point_json(c.center)},
                           {"demand_bps", c.demand_bps},
                           {"mcs_index", c.mcs_index},
                           {"data_rate_bps", c.data_rate_bps},
                           {"min_snr_db", c.min_snr_db},
                           {"slack_m", sol.slacks_m[i]}});
  }
  return {{"t_s", step.time_s},
          {"tx_power_dbm", sol.tx_power_dbm},
          {"position", point_json(sol.position)},
          {"excess_m", sol.excess_m},
          {"required_capacity_bps", sol.required_capacity_bps},
          {"constraints", std::move(constraints)},
          {"warnings", sol.warnings}};
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Scenario s = load_scenario_arg(a.scenario);
  const GatewayPlan plan = plan_gateway_track(s, strategy::Gwp{});
  json steps = json::array();
  for (const auto& step : plan.steps) steps.push_back(solution_json(step));
  const json report = {{"scenario", s.name}, {"steps", std::move(steps)}};
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!a.out.empty()) write_file(a.out, text);
  return kOk;
}

// simulate

struct SimulateArgs {
  ScenarioArgs scenario;
  std::string strategy = "gwp";
  std::uint64_t seed = 1;
  double warmup_s = 30.0;
  double frame_overhead_s = 0.0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Scenario s = load_scenario_arg(a.scenario);
  const PlacementStrategy strat = parse_strategy(a.strategy, a.seed);
  SimConfig config;
  config.seed = a.seed;
  config.warmup_s = a.warmup_s;
  config.duration_s = s.duration_s;
  config.frame_overhead_s = a.frame_overhead_s;
  try {
    config.tx_power_schedule = plan_gateway_track(s, strategy::Gwp{}).tx_power_schedule();
  } catch (const InfeasiblePlacement&) {
    if (std::holds_alternative<strategy::Gwp>(strat)) throw;
  }
  const GatewayPlan plan = plan_gateway_track(s, strat);
  const SimResult r = run_sim(s, plan.track, config);
  const std::string summary = sim_summary_json(r) + "\n";
  out << summary;
  if (!a.out.empty()) {
    const fs::path dir = prepare_out_dir(a.out);
    std::ostringstream thr, del;
    write_throughput_csv(thr, r);
    write_delays_csv(del, r);
    write_file(dir / "throughput.csv", thr.str());
    write_file(dir / "delays.csv", del.str());
    write_file(dir / "summary.json", summary);
  }
  return kOk;
}

// compare

struct CompareArgs {
  ScenarioArgs scenario;
  std::vector<std::string> strategies;
  std::string seeds = "1-20";
  double warmup_s = 30.0;
  double frame_overhead_s = 0.0;
  std::string baseline = "centroid";
  unsigned threads = 0;
  std::string out;
};

void print_table(std::ostream& out, const Comparison& c) {
  const auto rows = c.report_rows();
  out << "scenario " << c.scenario;
  if (c.tx_power_dbm) out << ", P_T " << *c.tx_power_dbm << " dBm";
  out << ", " << (c.strategies.empty() ? 0 : c.strategies.front().throughput_bps.values.size()) << " seeds\n";
  out << std::left << std::setw(16) << "strategy" << std::setw(16) << "metric" << std::setw(6) << "p" << std::right
      << std::setw(14) << "value" << std::setw(12) << "gain" << '\n';
  for (const auto& r : rows) {
    const bool thr = r.metric == "throughput_bps";
    std::ostringstream value, g;
    value << std::fixed << std::setprecision(thr ? 2 : 3) << (thr ? r.value / 1e6 : r.value * 1e3)
          << (thr ? " Mb/s" : " ms");
    if (r.gain_vs_baseline) g << std::showpos << std::fixed << std::setprecision(2) << *r.gain_vs_baseline * 100.0 << '%';
    out << std::left << std::setw(16) << r.strategy << std::setw(16) << r.metric << std::setw(6) << r.percentile
        << std::right << std::setw(14) << value.str() << std::setw(12) << g.str() << '\n';
  }
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const Scenario s = load_scenario_arg(a.scenario);
  std::vector<PlacementStrategy> strategies;
  for (const auto& name : a.strategies) strategies.push_back(parse_strategy(name));
  ComparisonOptions options;
  options.seeds = parse_seed_list(a.seeds);
  options.baseline = a.baseline;
  options.threads = a.threads;
  options.sim.warmup_s = a.warmup_s;
  options.sim.duration_s = s.duration_s;
  options.sim.frame_overhead_s = a.frame_overhead_s;
  const Comparison c = compare_strategies(s, strategies, options);
  print_table(out, c);
  if (!a.out.empty()) {
    const fs::path dir = prepare_out_dir(a.out);
    std::ostringstream report, runs;
    write_report_csv(report, c.report_rows());
    write_runs_csv(runs, c);
    write_file(dir / "report.csv", report.str());
    write_file(dir / "runs.csv", runs.str());
    write_file(dir / "comparison.json", comparison_json(c) + "\n");
  }
  return kOk;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse_u64(item));
      continue;
    }
    const std::uint64_t lo = parse_u64(std::string_view(item).substr(0, dash));
    const std::uint64_t hi = parse_u64(std::string_view(item).substr(dash + 1));
    if (hi < lo) throw std::invalid_argument("descending seed range '" + item + "'");
    if (hi - lo >= 1000000) throw std::invalid_argument("seed range too large '" + item + "'");
    for (std::uint64_t v = lo; v <= hi; ++v) seeds.push_back(v);
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traffic-aware gateway UAV placement and desk-scale network simulation", "gwp"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a scenario file");
  generate->add_option("kind", gen.kind, "scenario-a, scenario-b, or a builtin scenario name")->required();
  generate->add_option("--faps", gen.faps, "Number of FAPs (scenario-b)")->check(CLI::Range(2, 10000));
  generate->add_option("--l2-frac", gen.l2_frac, "Zone 2 share of the fair share; required for scenario-b")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--ratio", gen.ratio, "Right/left demand ratio (scenario-a)")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Placement seed");
  generate->add_option("--size", gen.size, "Venue extent x,y,z in metres (scenario-b)")
      ->expected(3)
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  generate->add_option("--duration", gen.duration_s, "Scenario length in seconds")->check(CLI::PositiveNumber);
  generate->add_flag("--mobile", gen.mobile, "Random-waypoint FAPs inside their zones (scenario-b)");
  generate->add_option("--capacity-factor", gen.capacity_factor, "Link demand as a multiple of offered load")
      ->check(CLI::PositiveNumber);
  generate->add_option("--out", gen.out, "Output file; standard output when omitted");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Run the placement solver at every update instant");
  add_scenario_options(solve, sol.scenario);
  solve->add_option("--out", sol.out, "Also write the JSON report to this file");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate one strategy for one seed");
  add_scenario_options(simulate, sim.scenario);
  simulate->add_option("--strategy", sim.strategy, "gwp|centroid|venue-center|random");
  simulate->add_option("--seed", sim.seed, "Run seed");
  simulate->add_option("--warmup", sim.warmup_s, "Warm-up excluded from metrics, seconds")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--frame-overhead", sim.frame_overhead_s, "Per-frame airtime overhead, seconds")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", sim.out, "Directory for throughput.csv, delays.csv, summary.json");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Seed-swept comparison of placement strategies");
  add_scenario_options(compare, cmp.scenario);
  compare->add_option("--strategy", cmp.strategies, "gwp|centroid|venue-center|random (repeatable)")
      ->required()
      ->take_all();
  compare->add_option("--seeds", cmp.seeds, "Seed list, e.g. 1-20 or 1,3,5");
  compare->add_option("--warmup", cmp.warmup_s, "Warm-up excluded from metrics, seconds")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--frame-overhead", cmp.frame_overhead_s, "Per-frame airtime overhead, seconds")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--baseline", cmp.baseline, "Strategy the gains are measured against");
  compare->add_option("--threads", cmp.threads, "Worker threads, 0 for all cores");
  compare->add_option("--out", cmp.out, "Directory for report.csv, runs.csv, comparison.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (solve->parsed()) return cmd_solve(sol, out);
    if (simulate->parsed()) return cmd_simulate(sim, out);
    return cmd_compare(cmp, out);
  } catch (const CLI::RequiredError& e) {
    err << "error: missing required option " << e.what() << '\n';
    return kUsage;
  } catch (const DemandUnsatisfiable& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InfeasiblePlacement& e) {
    err << "error: no feasible placement at t = " << format_seconds(e.time_s()) << " s (" << e.what() << ")\n";
    return kInfeasible;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace gwp::cli
