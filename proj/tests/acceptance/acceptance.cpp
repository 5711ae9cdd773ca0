#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grid_oracle.hpp"
#include "gwp/analysis.hpp"
#include "gwp/error.hpp"
#include "gwp/experiment.hpp"
#include "gwp/placement.hpp"
#include "gwp/rf.hpp"
#include "gwp/scenario.hpp"
#include "gwp/sim.hpp"

namespace {

using namespace gwp;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void require(Verdict& v, bool ok, const std::string& what) {
  if (!ok) v.pass = false;
  if (!v.detail.empty()) v.detail += "; ";
  v.detail += what;
}

Verdict worked_instance_feasibility() {
  Verdict v;
  const Scenario s = scenario_a();
  const auto constraints = build_constraints(s.fap_states_at(0.0), s.mcs_table);
  int high = 0, low = 0;
  for (const auto& c : constraints) {
    if (c.min_snr_db == 35.0) ++high;
    if (c.min_snr_db == 20.0) ++low;
  }
  require(v, high == 2 && low == 2, fmt("thresholds 2x35 dB + 2x20 dB: %s", high == 2 && low == 2 ? "yes" : "no"));
  const auto start = Clock::now();
  const auto slacks = check_point({23.3, 15.4, 3.3}, constraints, 22.0, s.radio);
  const double elapsed = seconds_since(start);
  const double worst = *std::min_element(slacks.begin(), slacks.end());
  require(v, worst >= -0.1, fmt("min slack %.4f m", worst));
  require(v, elapsed < 1e-3, fmt("%.1f us", elapsed * 1e6));
  return v;
}

Verdict worked_instance_solve() {
  Verdict v;
  const Scenario s = scenario_a();
  const auto faps = s.fap_states_at(0.0);
  const auto start = Clock::now();
  const SolveResult r = gwp_solve(faps, s.mcs_table, s.radio, s.bounds);
  const double elapsed = seconds_since(start);
  const auto* sol = std::get_if<PlacementSolution>(&r);
  if (sol == nullptr) {
    require(v, false, "no solution");
    return v;
  }
  require(v, sol->tx_power_dbm <= 22.0, fmt("P_T %.0f dBm", sol->tx_power_dbm));
  const double worst = *std::min_element(sol->slacks_m.begin(), sol->slacks_m.end());
  require(v, worst >= -1e-3, fmt("min slack %.4f m", worst));
  if (sol->tx_power_dbm >= 1.0) {
    const auto below = min_max_excess(sol->constraints, sol->tx_power_dbm - 1.0, s.radio, s.bounds);
    require(v, below.excess_m > 1e-3, fmt("g at P_T-1 = %.4f m", below.excess_m));
  }
  require(v, elapsed < 1.0, fmt("%.3f s", elapsed));
  return v;
}

Verdict rf_round_trip() {
  Verdict v;
  const RadioConfig cfg;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double pt = 40.0 * i / 99.0, snr = 60.0 * j / 99.0;
      const double back = snr_db(pt, max_distance(pt, snr, cfg), cfg);
      worst = std::max(worst, std::abs(back - snr) / std::max(1.0, std::abs(snr)));
    }
  }
  require(v, worst <= 1e-9, fmt("10000 points, worst relative error %.2e", worst));
  return v;
}

Verdict grid_oracle_agreement() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  const Cuboid cube = Cuboid::from_extent(100, 100, 100);
  int disagreements = 0, feasible = 0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(rng, 100.0);
    const auto r = min_max_excess(inst.constraints, inst.tx_power_dbm, RadioConfig{}, cube);
    const bool grid = testing::grid_has_feasible_point(testing::spheres_of(inst), cube, 0.25);
    if (grid && r.excess_m > 1e-3) ++disagreements;
    if (r.excess_m <= -0.5 && !grid) ++disagreements;
    if (r.excess_m <= 1e-3) ++feasible;
  }
  const double elapsed = seconds_since(start);
  require(v, disagreements == 0, fmt("%d/50 disagreements (%d feasible)", disagreements, feasible));
  require(v, elapsed < 60.0, fmt("%.2f s", elapsed));
  return v;
}

Scenario dedicated_link(double link_rate_bps, double offered_bps, double duration_s) {
  Scenario s;
  s.name = "dedicated-link";
  s.bounds = Cuboid::from_extent(100, 100, 20);
  s.duration_s = duration_s;
  s.update_period_s = duration_s;
  s.mcs_table = McsTable({{0, link_rate_bps, -1000.0}});
  s.faps.push_back({Trajectory::stationary(1, {10, 10, 10}, duration_s, 1.0), offered_bps, link_rate_bps, 1});
  return s;
}

SimConfig fixed_power_config(double duration_s, double warmup_s) {
  SimConfig c;
  c.duration_s = duration_s;
  c.warmup_s = warmup_s;
  c.tx_power_schedule = {{0.0, 22.0}};
  return c;
}

Verdict md1_agreement() {
  Verdict v;
  const double link = 702e6;
  for (const double rho : {0.1, 0.5, 0.8}) {
    const double offered = rho * link;
    const Scenario s = dedicated_link(link, offered, 130.0);
    const SimResult r = run_sim(s, Trajectory::stationary(0, {20, 10, 10}, 130.0, 1.0), fixed_power_config(130, 30));
    const auto oracle = analytic_single_link_oracle(link, offered, 11200);
    const double thr_err = std::abs(r.mean_throughput_bps() - oracle.throughput_bps) / oracle.throughput_bps;
    const double delay_err = std::abs(r.mean_delay_s() - *oracle.mean_delay_s) / *oracle.mean_delay_s;
    require(v, thr_err <= 0.01 && delay_err <= 0.05,
            fmt("rho %.1f: throughput err %.3f%%, delay %.3g s vs %.3g s (%.2f%%)", rho, 100 * thr_err,
                r.mean_delay_s(), *oracle.mean_delay_s, 100 * delay_err));
  }
  return v;
}

Verdict two_fap_saturation() {
  Verdict v;
  const double duration = 130.0;
  Scenario s;
  s.name = "two-fap-saturation";
  s.bounds = Cuboid::from_extent(100, 100, 20);
  s.duration_s = duration;
  s.update_period_s = duration;
  s.faps.push_back({Trajectory::stationary(1, {26, 10, 10}, duration, 1.0), 600e6, 702e6, 2});
  s.faps.push_back({Trajectory::stationary(2, {90, 10, 10}, duration, 1.0), 600e6, 234e6, 1});
  const SimResult r = run_sim(s, Trajectory::stationary(0, {10, 10, 10}, duration, 1.0), fixed_power_config(duration, 30));
  const double expected = 2.0 / (1.0 / 702e6 + 1.0 / 234e6);
  const double err = std::abs(r.mean_throughput_bps() - expected) / expected;
  require(v, err <= 0.02, fmt("%.2f Mbit/s vs %.2f Mbit/s (%.2f%%)", r.mean_throughput_bps() / 1e6, expected / 1e6,
                              100 * err));
  return v;
}

Verdict directional_comparison(std::vector<std::string>& notes) {
  Verdict v;
  const auto start = Clock::now();
  ComparisonOptions options;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) options.seeds.push_back(seed);
  options.percentiles = {0.5};
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    options.sim.duration_s = s.duration_s;
    const Comparison c = compare_strategies(s, {strategy::Gwp{}, strategy::FapCentroid{}}, options);
    const StrategySummary* gwp = c.find("gwp");
    const StrategySummary* base = c.find("centroid");
    const double thr_g = percentile(gwp->throughput_bps.values, 0.5);
    const double thr_b = percentile(base->throughput_bps.values, 0.5);
    const double d_g = percentile(gwp->delay_s.values, 0.5);
    const double d_b = percentile(base->delay_s.values, 0.5);
    const double g = gain(gwp->throughput_bps, base->throughput_bps, 0.5);
    const bool ok = thr_g >= thr_b && g > 0.0 && d_g <= d_b;
    require(v, ok,
            fmt("%s: median R %.2f vs %.2f Mbit/s (gain %+.3f%%), median delay %.3f vs %.3f ms", name.c_str(),
                thr_g / 1e6, thr_b / 1e6, 100 * g, d_g * 1e3, d_b * 1e3));
  }
  const double elapsed = seconds_since(start);
  require(v, elapsed < 600.0, fmt("%.0f s", elapsed));
  notes.push_back("criterion 7 uses 130 s runs with a 30 s warm-up, 20 seeds per strategy");
  return v;
}

Verdict conservation_and_determinism() {
  Verdict v;
  std::vector<Scenario> scenarios;
  for (const auto& name : builtin_scenario_names()) scenarios.push_back(with_duration(builtin_scenario(name), 40.0));
  TwoZoneOptions mobile;
  mobile.mobile = true;
  Scenario m = generate_two_zone(10, Cuboid::from_extent(80, 80, 20), 7.8e6, 70.2e6, 40.0, 5, mobile);
  m.update_period_s = 10.0;
  m.name = "scenario-b-mobile";
  scenarios.push_back(std::move(m));
  const std::vector<PlacementStrategy> strategies{strategy::Gwp{}, strategy::FapCentroid{}, strategy::VenueCenter{},
                                                  strategy::RandomWaypoint{}};
  int runs = 0, violations = 0, mismatches = 0;
  for (const auto& s : scenarios) {
    const GatewayPlan gwp_plan = plan_gateway_track(s, strategy::Gwp{});
    for (const auto& strat : strategies) {
      const GatewayPlan plan = plan_gateway_track(s, strat);
      for (const std::uint64_t seed : {1u, 2u}) {
        SimConfig c;
        c.duration_s = s.duration_s;
        c.warmup_s = 10.0;
        c.seed = seed;
        c.tx_power_schedule = gwp_plan.tx_power_schedule();
        const SimResult a = run_sim(s, plan.track, c);
        const SimResult b = run_sim(s, plan.track, c);
        ++runs;
        if (!(a == b)) ++mismatches;
        for (const auto& f : a.flows) {
          if (f.generated != f.delivered + f.codel_drops + f.tail_drops + f.in_queue_at_end) ++violations;
        }
      }
    }
  }
  require(v, violations == 0, fmt("%d runs over %zu scenarios, %d accounting violations", runs, scenarios.size(),
                                  violations));
  require(v, mismatches == 0, fmt("%d rerun mismatches", mismatches));
  return v;
}

Verdict demand_arithmetic() {
  Verdict v;
  require(v, fair_share(5) == 195e6 && fair_share(11) == 78e6,
          fmt("L = %.17g / %.17g bit/s", fair_share(5), fair_share(11)));
  const auto loads = [](const Scenario& s) {
    double hi = 0.0, lo = 1e300;
    for (const auto& f : s.faps) {
      hi = std::max(hi, f.offered_bps);
      lo = std::min(lo, f.offered_bps);
    }
    return std::pair{hi, lo};
  };
  const std::pair<const char*, std::pair<double, double>> expected[] = {
      {"scenario-a", {146.25e6, 48.75e6}}, {"scenario-b-90-10", {70.2e6, 7.8e6}}, {"scenario-b-75-25", {58.5e6, 19.5e6}}};
  for (const auto& [name, want] : expected) {
    const auto got = loads(builtin_scenario(name));
    require(v, got == want, fmt("%s lambda %.17g/%.17g", name, got.first, got.second));
  }
  return v;
}

}  // namespace

int main() {
  std::vector<std::string> notes;
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, worked_instance_feasibility},
      {2, worked_instance_solve},
      {3, rf_round_trip},
      {4, grid_oracle_agreement},
      {5, md1_agreement},
      {6, two_fap_saturation},
      {7, [&] { return directional_comparison(notes); }},
      {8, conservation_and_determinism},
      {9, demand_arithmetic},
  };
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %d: %s\n", v.pass ? "PASS" : "FAIL", id, v.detail.c_str());
    std::fflush(stdout);
  }
  for (const auto& n : notes) std::printf("note: %s\n", n.c_str());
  return failed == 0 ? 0 : 1;
}
