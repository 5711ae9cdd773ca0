#pragma once

#include <vector>

#include "gwp/geometry.hpp"

namespace gwp {

struct TrajectorySample {
  double time_s = 0.0;
  Point3 position;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

// Time-stamped positions of one node; times strictly increasing. Between
// samples the node moves in a straight line at constant speed.
class Trajectory {
 public:
  Trajectory() = default;
  // Throws ConfigError unless times are strictly increasing and positions finite.
  Trajectory(int node_id, std::vector<TrajectorySample> samples);

  static Trajectory stationary(int node_id, const Point3& position, double duration_s, double sample_period_s);

  int node_id() const noexcept { return node_id_; }
  const std::vector<TrajectorySample>& samples() const noexcept { return samples_; }
  bool empty() const noexcept { return samples_.empty(); }
  double start_time() const;
  double end_time() const;

  bool covers(double t0, double t1) const;
  // Linear interpolation; throws ConfigError outside [start_time, end_time].
  Point3 position_at(double t) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  int node_id_ = 0;
  std::vector<TrajectorySample> samples_;
};

// Sample instants 0, period, 2*period, ... up to duration, with duration
// appended when it is not on the grid.
std::vector<double> sample_grid(double duration_s, double period_s);

}  // namespace gwp
