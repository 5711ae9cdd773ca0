#pragma once

// Distribution views and comparisons over metric samples.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gwp {

struct MetricSeries {
  std::vector<double> values;
  std::string unit;
  std::string scenario;
  std::string strategy;
  std::optional<std::uint64_t> seed;
};

// Right-continuous step function: value `below` left of the first knot, then
// points[j].second on [points[j].first, points[j+1].first).
struct StepFunction {
  double below = 0.0;
  std::vector<std::pair<double, double>> points;

  double operator()(double x) const;
};

// F'(x) = fraction of samples strictly greater than x.
StepFunction ccdf(const std::vector<double>& samples);
// F(x) = fraction of samples <= x.
StepFunction cdf(const std::vector<double>& samples);

// Nearest-rank percentile: smallest sample v with F(v) >= p, 0 < p < 1.
double percentile(const std::vector<double>& samples, double p);

// (percentile(treatment) - percentile(baseline)) / percentile(baseline).
// Positive means the treatment is larger. Throws DomainError when the
// baseline percentile is zero.
double gain(const MetricSeries& treatment, const MetricSeries& baseline, double p);

// One mean per run, in input order.
MetricSeries aggregate_runs(const std::vector<MetricSeries>& runs);

double mean(const std::vector<double>& samples);

struct ReportRow {
  std::string strategy;
  std::string metric;
  double percentile = 0.0;
  double value = 0.0;
  std::optional<double> gain_vs_baseline;
};

// CSV: strategy,metric,percentile,value,gain_vs_baseline (empty when absent).
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
// Two-column x,F dump of a step function.
void write_step_csv(std::ostream& out, const StepFunction& f, const std::string& value_column);

}  // namespace gwp
