#include "gwp/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gwp/error.hpp"

namespace gwp {

Trajectory::Trajectory(int node_id, std::vector<TrajectorySample> samples)
    : node_id_(node_id), samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].time_s) || !samples_[i].position.is_finite()) {
      throw ConfigError("trajectory of node " + std::to_string(node_id_) + " has a non-finite sample");
    }
    if (i > 0 && !(samples_[i].time_s > samples_[i - 1].time_s)) {
      std::ostringstream os;
      os << "trajectory of node " << node_id_ << ": time " << samples_[i].time_s << " does not increase";
      throw ConfigError(os.str());
    }
  }
}

Trajectory Trajectory::stationary(int node_id, const Point3& position, double duration_s, double sample_period_s) {
  std::vector<TrajectorySample> samples;
  for (const double t : sample_grid(duration_s, sample_period_s)) samples.push_back({t, position});
  return Trajectory(node_id, std::move(samples));
}

double Trajectory::start_time() const {
  if (samples_.empty()) throw ConfigError("empty trajectory");
  return samples_.front().time_s;
}

double Trajectory::end_time() const {
  if (samples_.empty()) throw ConfigError("empty trajectory");
  return samples_.back().time_s;
}

bool Trajectory::covers(double t0, double t1) const {
  return !samples_.empty() && samples_.front().time_s <= t0 && samples_.back().time_s >= t1;
}

Point3 Trajectory::position_at(double t) const {
  if (samples_.empty() || t < samples_.front().time_s || t > samples_.back().time_s) {
    std::ostringstream os;
    os << "trajectory of node " << node_id_ << " does not cover t = " << t << " s";
    throw ConfigError(os.str());
  }
  const auto hi = std::lower_bound(samples_.begin(), samples_.end(), t,
                                   [](const TrajectorySample& s, double v) { return s.time_s < v; });
  if (hi->time_s == t || hi == samples_.begin()) return hi->position;
  const auto lo = std::prev(hi);
  const double s = (t - lo->time_s) / (hi->time_s - lo->time_s);
  return lerp(lo->position, hi->position, s);
}

std::vector<double> sample_grid(double duration_s, double period_s) {
  if (!(duration_s > 0.0) || !(period_s > 0.0)) throw DomainError("duration and sample period must be > 0");
  std::vector<double> times;
  const auto steps = static_cast<long long>(std::floor(duration_s / period_s + 1e-9));
  times.reserve(static_cast<std::size_t>(steps) + 2);
  for (long long k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * period_s);
  if (duration_s - times.back() > 1e-9 * std::max(1.0, duration_s)) times.push_back(duration_s);
  else times.back() = std::min(times.back(), duration_s);
  return times;
}

}  // namespace gwp
