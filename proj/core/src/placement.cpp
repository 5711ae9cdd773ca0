#include "gwp/placement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "gwp/error.hpp"

namespace gwp {

namespace {

// The 26 lattice directions of {-1,0,1}^3 \ {0}, unit length, fixed order.
std::array<Point3, 26> make_poll_directions() {
  std::array<Point3, 26> dirs{};
  std::size_t n = 0;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const Point3 d{double(dx), double(dy), double(dz)};
        dirs[n++] = d * (1.0 / norm(d));
      }
    }
  }
  return dirs;
}

const std::array<Point3, 26> kPollDirections = make_poll_directions();

double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Minimum-norm point of the convex hull of `vs` (Gilbert's algorithm).
Point3 min_norm_hull_point(std::span<const Point3> vs) {
  Point3 x = vs.front();
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const double d = dot(vs[j], x);
      if (d < best_dot) {
        best_dot = d;
        best = j;
      }
    }
    const double gap = dot(x, x) - best_dot;
    if (gap <= 1e-14) break;
    const Point3 delta = vs[best] - x;
    const double dd = dot(delta, delta);
    if (dd <= 0.0) break;
    const double lambda = std::clamp(-dot(x, delta) / dd, 0.0, 1.0);
    x += delta * lambda;
  }
  return x;
}

struct Ball {
  Point3 center;
  double radius;
};

class ExcessFunction {
 public:
  ExcessFunction(std::span<const SnrConstraint> constraints, double tx_power_dbm, const RadioConfig& config) {
    balls_.reserve(constraints.size());
    for (const auto& c : constraints) {
      balls_.push_back({c.center, max_distance(tx_power_dbm, c.min_snr_db, config)});
    }
  }

  double operator()(const Point3& p) const {
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& b : balls_) g = std::max(g, distance(p, b.center) - b.radius);
    return g;
  }

  // Steepest-descent direction of the terms within `band` of the maximum,
  // restricted to directions that stay inside `bounds`. Zero when none exists.
  Point3 descent_direction(const Point3& p, double g, double band, const Cuboid& bounds) const {
    std::vector<Point3> grads;
    for (const auto& b : balls_) {
      const Point3 diff = p - b.center;
      const double d = norm(diff);
      if (d - b.radius < g - band) continue;
      if (d <= 0.0) return {};  // 0 is a subgradient of an active term
      grads.push_back(diff * (1.0 / d));
    }
    if (grads.empty()) return {};
    Point3 v = min_norm_hull_point(grads) * -1.0;
    for (int axis = 0; axis < 3; ++axis) {
      if ((p[axis] <= bounds.min()[axis] && v[axis] < 0.0) || (p[axis] >= bounds.max()[axis] && v[axis] > 0.0)) {
        v[axis] = 0.0;
      }
    }
    const double n = norm(v);
    if (n < 1e-12) return {};
    return v * (1.0 / n);
  }

  const std::vector<Ball>& balls() const { return balls_; }

 private:
  std::vector<Ball> balls_;
};

MinMaxResult pattern_search(const ExcessFunction& g, Point3 start, const Cuboid& bounds, double initial_step,
                            double min_step, double decrease = 1e-4) {
  Point3 p = bounds.clamp(start);
  double gp = g(p);
  double step = initial_step;
  while (step >= min_step) {
    Point3 best = p;
    double best_g = gp;
    auto poll = [&](const Point3& dir) {
      const Point3 q = bounds.clamp(p + dir * step);
      const double gq = g(q);
      if (gq < best_g) {
        best_g = gq;
        best = q;
      }
    };
    for (const auto& dir : kPollDirections) poll(dir);
    if (const Point3 d = g.descent_direction(p, gp, step, bounds); d != Point3{}) poll(d);

    // Sufficient decrease relative to the step; tiny gains along a ridge stall the search.
    if (best_g < gp - decrease * step) {
      p = best;
      gp = best_g;
    } else {
      step *= 0.5;
    }
  }
  return {p, gp};
}

}  // namespace

std::vector<SnrConstraint> build_constraints(std::span<const FapState> faps, const McsTable& table) {
  std::vector<SnrConstraint> out;
  out.reserve(faps.size());
  for (const auto& fap : faps) {
    const McsEntry& mcs = min_mcs_for_demand(table, fap.demand_bps);
    out.push_back({fap.id, fap.position, mcs.min_snr_db, fap.demand_bps, mcs.index, mcs.data_rate_bps});
  }
  return out;
}

std::vector<double> check_point(const Point3& point, std::span<const SnrConstraint> constraints,
                                double tx_power_dbm, const RadioConfig& config) {
  std::vector<double> slacks;
  slacks.reserve(constraints.size());
  for (const auto& c : constraints) {
    slacks.push_back(max_distance(tx_power_dbm, c.min_snr_db, config) - distance(point, c.center));
  }
  return slacks;
}

double max_excess(const Point3& point, std::span<const SnrConstraint> constraints, double tx_power_dbm,
                  const RadioConfig& config) {
  return ExcessFunction(constraints, tx_power_dbm, config)(point);
}

MinMaxResult min_max_excess(std::span<const SnrConstraint> constraints, double tx_power_dbm,
                            const RadioConfig& config, const Cuboid& bounds, const SolverOptions& options) {
  if (constraints.empty()) throw DomainError("min_max_excess needs at least one constraint");
  const ExcessFunction g(constraints, tx_power_dbm, config);

  std::vector<Point3> seeds;
  seeds.reserve(constraints.size() * (constraints.size() + 1) / 2 + 1);
  for (const auto& c : constraints) seeds.push_back(c.center);
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      seeds.push_back(lerp(constraints[i].center, constraints[j].center, 0.5));
    }
  }
  seeds.push_back(lerp(bounds.min(), bounds.max(), 0.5));

  const double initial_step = bounds.diagonal() / 4.0;
  const double min_step = options.position_tol_m / 2.0;
  MinMaxResult best{bounds.clamp(seeds.front()), std::numeric_limits<double>::infinity()};
  for (const auto& seed : seeds) {
    const MinMaxResult r = pattern_search(g, seed, bounds, initial_step, min_step);
    if (r.excess_m < best.excess_m) best = r;
  }
  // Polish the winner with plain decrease and a finer floor.
  const MinMaxResult polished = pattern_search(g, best.point, bounds, 64.0 * min_step, min_step / 8.0, 0.0);
  return polished.excess_m <= best.excess_m ? polished : best;
}

namespace {

// Moves p off any FAP it (nearly) coincides with, keeping the worst slack as
// large as possible.
Point3 separate_from_faps(const Point3& p, std::span<const SnrConstraint> constraints, double tx_power_dbm,
                          const RadioConfig& config, const Cuboid& bounds, double separation) {
  auto too_close = [&](const Point3& q) {
    return std::any_of(constraints.begin(), constraints.end(),
                       [&](const SnrConstraint& c) { return distance(q, c.center) < separation; });
  };
  if (!too_close(p)) return p;

  const ExcessFunction g(constraints, tx_power_dbm, config);
  Point3 best = p;
  double best_g = std::numeric_limits<double>::infinity();
  // Step slightly past the separation so the result clears the strict bound.
  for (const double scale : {1.0 + 1e-9, 2.0, 4.0}) {
    for (const auto& dir : kPollDirections) {
      const Point3 q = p + dir * (separation * scale);
      if (!bounds.contains(q) || too_close(q)) continue;
      const double gq = g(q);
      if (gq < best_g) {
        best_g = gq;
        best = q;
      }
    }
    if (std::isfinite(best_g)) return best;
  }
  return best;
}

}  // namespace

SolveResult gwp_solve(std::span<const FapState> faps, const McsTable& table, const RadioConfig& config,
                      const Cuboid& bounds, const SolverOptions& options) {
  if (faps.empty()) throw DomainError("gwp_solve needs at least one FAP");
  config.validate();
  for (const auto& fap : faps) {
    if (!bounds.contains(fap.position)) {
      std::ostringstream os;
      os << "FAP " << fap.id << " at " << fap.position << " lies outside the venue";
      throw DomainError(os.str());
    }
  }

  const std::vector<SnrConstraint> constraints = build_constraints(faps, table);
  const CapacityReport capacity = required_capacity(faps, table, config);

  double best_excess = std::numeric_limits<double>::infinity();
  for (int power = 0; power <= config.max_tx_power_dbm; ++power) {
    const double tx = power;
    const MinMaxResult r = min_max_excess(constraints, tx, config, bounds, options);
    best_excess = r.excess_m;
    if (r.excess_m > options.feasibility_tol_m) continue;

    PlacementSolution sol;
    sol.tx_power_dbm = tx;
    sol.position = separate_from_faps(r.point, constraints, tx, config, bounds, options.separation_m);
    sol.slacks_m = check_point(sol.position, constraints, tx, config);
    sol.excess_m = max_excess(sol.position, constraints, tx, config);
    sol.required_capacity_bps = capacity.required_capacity_bps;
    sol.constraints = constraints;
    sol.warnings = capacity.warnings;
    return sol;
  }
  return NoSolution{config.max_tx_power_dbm, best_excess};
}

CapacityReport required_capacity(std::span<const FapState> faps, const McsTable& table, const RadioConfig& config) {
  CapacityReport report;
  for (const auto& fap : faps) {
    report.required_capacity_bps += min_mcs_for_demand(table, fap.demand_bps).data_rate_bps;
    report.total_demand_bps += fap.demand_bps;
  }
  if (report.total_demand_bps > config.max_channel_capacity_bps) {
    std::ostringstream os;
    os << "total demand " << report.total_demand_bps << " bit/s exceeds the channel capacity of "
       << config.max_channel_capacity_bps << " bit/s";
    report.warnings.push_back(os.str());
  }
  return report;
}

}  // namespace gwp
