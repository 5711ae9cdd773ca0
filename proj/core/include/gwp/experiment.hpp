#pragma once

// Seed-swept strategy comparison: plans the gateway track per strategy, runs
// the simulator per seed, and reduces each run to its mean throughput and delay.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gwp/analysis.hpp"
#include "gwp/baselines.hpp"
#include "gwp/scenario.hpp"
#include "gwp/sim.hpp"

namespace gwp {

struct ComparisonOptions {
  // Base configuration; seed is overwritten per run.
  SimConfig sim;
  std::vector<std::uint64_t> seeds;
  std::string baseline = "centroid";
  std::vector<double> percentiles{0.5, 0.9};
  // Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
  // Use the Gwp plan's transmission power for every strategy.
  bool shared_tx_power = true;
  SolverOptions solver;
};

struct RunRecord {
  std::string strategy;
  std::uint64_t seed = 0;
  double mean_throughput_bps = 0.0;
  // NaN when the run delivered no measured packet.
  double mean_delay_s = 0.0;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
};

struct StrategySummary {
  std::string strategy;
  MetricSeries throughput_bps;
  MetricSeries delay_s;
};

struct Comparison {
  std::string scenario;
  std::optional<double> tx_power_dbm;
  // Ordered by (strategy input order, seed input order).
  std::vector<RunRecord> runs;
  std::vector<StrategySummary> strategies;
  std::string baseline;
  std::vector<double> percentiles;

  const StrategySummary* find(const std::string& strategy) const;
  // Gains are present only when the baseline is among at least two strategies.
  // Delay gains are sign-inverted so that positive always means an improvement.
  std::vector<ReportRow> report_rows() const;
};

// Throws ConfigError for an empty strategy or seed list; InfeasiblePlacement
// propagates when Gwp is requested and has no solution.
Comparison compare_strategies(const Scenario& scenario, const std::vector<PlacementStrategy>& strategies,
                              const ComparisonOptions& options);

void write_runs_csv(std::ostream& out, const Comparison& comparison);
std::string comparison_json(const Comparison& comparison);

}  // namespace gwp
