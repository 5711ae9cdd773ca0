#include "gwp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "gwp/error.hpp"

namespace gwp {

const StrategySummary* Comparison::find(const std::string& strategy) const {
  for (const auto& s : strategies) {
    if (s.strategy == strategy) return &s;
  }
  return nullptr;
}

std::vector<ReportRow> Comparison::report_rows() const {
  const StrategySummary* base = strategies.size() >= 2 ? find(baseline) : nullptr;
  std::vector<ReportRow> rows;
  for (const auto& s : strategies) {
    const std::pair<const char*, const MetricSeries*> metrics[] = {{"throughput_bps", &s.throughput_bps},
                                                                   {"delay_s", &s.delay_s}};
    for (const auto& [metric, series] : metrics) {
      if (series->values.empty()) continue;
      const MetricSeries* base_series = nullptr;
      if (base != nullptr) base_series = metric == std::string("delay_s") ? &base->delay_s : &base->throughput_bps;
      for (const double p : percentiles) {
        ReportRow row{s.strategy, metric, p, percentile(series->values, p), std::nullopt};
        if (base_series != nullptr && !base_series->values.empty() && &s != base) {
          if (percentile(base_series->values, p) != 0.0) {
            const double g = gain(*series, *base_series, p);
            row.gain_vs_baseline = series == &s.delay_s ? -g : g;
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

struct Job {
  std::size_t strategy_index;
  std::size_t seed_index;
};

PlacementStrategy with_seed(const PlacementStrategy& s, std::uint64_t seed) {
  if (const auto* rw = std::get_if<strategy::RandomWaypoint>(&s)) {
    strategy::RandomWaypoint copy = *rw;
    copy.seed = seed;
    return copy;
  }
  return s;
}

}  // namespace

Comparison compare_strategies(const Scenario& scenario, const std::vector<PlacementStrategy>& strategies,
                              const ComparisonOptions& options) {
  if (strategies.empty()) throw ConfigError("comparison needs at least one strategy");
  if (options.seeds.empty()) throw ConfigError("comparison needs at least one seed");
  for (const double p : options.percentiles) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("report percentiles must lie in (0, 1)");
  }
  scenario.validate();
  options.sim.validate();

  Comparison out;
  out.scenario = scenario.name;
  out.baseline = options.baseline;
  out.percentiles = options.percentiles;

  const bool wants_gwp = std::any_of(strategies.begin(), strategies.end(),
                                     [](const auto& s) { return std::holds_alternative<strategy::Gwp>(s); });
  SimConfig base = options.sim;
  if (options.shared_tx_power) {
    try {
      const GatewayPlan gwp_plan = plan_gateway_track(scenario, strategy::Gwp{}, options.solver);
      base.tx_power_schedule = gwp_plan.tx_power_schedule();
      if (!base.tx_power_schedule.empty()) out.tx_power_dbm = base.tx_power_schedule.front().second;
    } catch (const InfeasiblePlacement&) {
      if (wants_gwp) throw;
    }
  }

  // Deterministic plans are shared across seeds.
  std::vector<std::optional<GatewayPlan>> plans(strategies.size());
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (!std::holds_alternative<strategy::RandomWaypoint>(strategies[i])) {
      plans[i] = plan_gateway_track(scenario, strategies[i], options.solver);
    }
  }

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    for (std::size_t k = 0; k < options.seeds.size(); ++k) jobs.push_back({i, k});
  }
  out.runs.resize(jobs.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        const Job& job = jobs[j];
        const std::uint64_t seed = options.seeds[job.seed_index];
        const PlacementStrategy& s = strategies[job.strategy_index];
        const GatewayPlan plan = plans[job.strategy_index]
                                     ? *plans[job.strategy_index]
                                     : plan_gateway_track(scenario, with_seed(s, seed), options.solver);
        SimConfig config = base;
        config.seed = seed;
        const SimResult r = run_sim(scenario, plan.track, config);
        RunRecord rec{strategy_name(s), seed, r.mean_throughput_bps(), r.mean_delay_s(), 0, 0, 0};
        for (const auto& f : r.flows) {
          rec.generated += f.generated;
          rec.delivered += f.delivered;
          rec.dropped += f.codel_drops + f.tail_drops;
        }
        out.runs[j] = std::move(rec);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  unsigned n_threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < strategies.size(); ++i) {
    StrategySummary summary;
    summary.strategy = strategy_name(strategies[i]);
    summary.throughput_bps = {{}, "bit/s", scenario.name, summary.strategy, std::nullopt};
    summary.delay_s = {{}, "s", scenario.name, summary.strategy, std::nullopt};
    for (std::size_t k = 0; k < options.seeds.size(); ++k) {
      const RunRecord& rec = out.runs[i * options.seeds.size() + k];
      summary.throughput_bps.values.push_back(rec.mean_throughput_bps);
      if (!std::isnan(rec.mean_delay_s)) summary.delay_s.values.push_back(rec.mean_delay_s);
    }
    out.strategies.push_back(std::move(summary));
  }
  return out;
}

void write_runs_csv(std::ostream& out, const Comparison& comparison) {
  const auto precision = out.precision();
  out << "strategy,seed,mean_throughput_bps,mean_delay_s,generated,delivered,dropped\n" << std::setprecision(12);
  for (const auto& r : comparison.runs) {
    out << r.strategy << ',' << r.seed << ',' << r.mean_throughput_bps << ',';
    if (!std::isnan(r.mean_delay_s)) out << r.mean_delay_s;
    out << ',' << r.generated << ',' << r.delivered << ',' << r.dropped << '\n';
  }
  out.precision(precision);
}

std::string comparison_json(const Comparison& comparison) {
  using nlohmann::json;
  json j;
  j["scenario"] = comparison.scenario;
  j["baseline"] = comparison.baseline;
  j["tx_power_dbm"] = comparison.tx_power_dbm ? json(*comparison.tx_power_dbm) : json(nullptr);
  json rows = json::array();
  for (const auto& r : comparison.report_rows()) {
    rows.push_back({{"strategy", r.strategy},
                    {"metric", r.metric},
                    {"percentile", r.percentile},
                    {"value", r.value},
                    {"gain_vs_baseline", r.gain_vs_baseline ? json(*r.gain_vs_baseline) : json(nullptr)}});
  }
  j["report"] = std::move(rows);
  json runs = json::array();
  for (const auto& r : comparison.runs) {
    runs.push_back({{"strategy", r.strategy},
                    {"seed", r.seed},
                    {"mean_throughput_bps", r.mean_throughput_bps},
                    {"mean_delay_s", std::isnan(r.mean_delay_s) ? json(nullptr) : json(r.mean_delay_s)},
                    {"generated", r.generated},
                    {"delivered", r.delivered},
                    {"dropped", r.dropped}});
  }
  j["runs"] = std::move(runs);
  return j.dump(2);
}

}  // namespace gwp
