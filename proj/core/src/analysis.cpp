#include "gwp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "gwp/error.hpp"

namespace gwp {

double StepFunction::operator()(double x) const {
  const auto it = std::upper_bound(points.begin(), points.end(), x,
                                   [](double v, const std::pair<double, double>& p) { return v < p.first; });
  if (it == points.begin()) return below;
  return std::prev(it)->second;
}

namespace {

std::vector<double> sorted_copy(const std::vector<double>& samples, const char* what) {
  if (samples.empty()) throw DomainError(std::string(what) + " of an empty series");
  std::vector<double> s = samples;
  std::sort(s.begin(), s.end());
  return s;
}

// Knots at each distinct value with the fraction of samples <= it.
StepFunction cumulative(const std::vector<double>& sorted) {
  StepFunction f;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    f.points.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return f;
}

}  // namespace

StepFunction ccdf(const std::vector<double>& samples) {
  StepFunction f = cumulative(sorted_copy(samples, "CCDF"));
  for (auto& p : f.points) p.second = 1.0 - p.second;
  f.below = 1.0;
  // The last knot counts every sample.
  f.points.back().second = 0.0;
  return f;
}

StepFunction cdf(const std::vector<double>& samples) {
  StepFunction f = cumulative(sorted_copy(samples, "CDF"));
  f.below = 0.0;
  f.points.back().second = 1.0;
  return f;
}

double percentile(const std::vector<double>& samples, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("percentile needs 0 < p < 1");
  const std::vector<double> s = sorted_copy(samples, "percentile");
  const double n = static_cast<double>(s.size());
  const double exact = p * n;
  const double nearest = std::round(exact);
  // p * n that lands on an integer up to rounding noise must not bump the rank.
  const double rank = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
  const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, n)) - 1;
  return s[idx];
}

double gain(const MetricSeries& treatment, const MetricSeries& baseline, double p) {
  const double base = percentile(baseline.values, p);
  if (base == 0.0) throw DomainError("gain is undefined for a zero baseline");
  return (percentile(treatment.values, p) - base) / base;
}

double mean(const std::vector<double>& samples) {
  if (samples.empty()) throw DomainError("mean of an empty series");
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

MetricSeries aggregate_runs(const std::vector<MetricSeries>& runs) {
  if (runs.empty()) throw DomainError("aggregate_runs needs at least one run");
  MetricSeries out;
  out.unit = runs.front().unit;
  out.scenario = runs.front().scenario;
  out.strategy = runs.front().strategy;
  out.values.reserve(runs.size());
  for (const auto& r : runs) out.values.push_back(mean(r.values));
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "strategy,metric,percentile,value,gain_vs_baseline\n" << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.metric << ',' << r.percentile << ',' << r.value << ',';
    if (r.gain_vs_baseline) out << *r.gain_vs_baseline;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_step_csv(std::ostream& out, const StepFunction& f, const std::string& value_column) {
  const auto precision = out.precision();
  out << "x," << value_column << '\n' << std::setprecision(12);
  for (const auto& [x, y] : f.points) out << x << ',' << y << '\n';
  out.precision(precision);
}

}  // namespace gwp
