#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gwp/geometry.hpp"
#include "gwp/placement.hpp"
#include "gwp/rf.hpp"

namespace gwp::testing {

struct Sphere {
  Point3 center;
  double radius;
};

// Exhaustive scan of the lattice min + k * step inside bounds: true when some
// lattice point lies in every sphere. Slabs and rows that miss a sphere are
// skipped, and each (x, y) column is resolved by intersecting z-intervals,
// which leaves the answer identical to visiting every point.
inline bool grid_has_feasible_point(const std::vector<Sphere>& spheres, const Cuboid& bounds, double step) {
  const auto count = [&](int axis) {
    return static_cast<long>(std::floor((bounds.max()[axis] - bounds.min()[axis]) / step + 1e-9));
  };
  const long nx = count(0), ny = count(1), nz = count(2);
  for (long i = 0; i <= nx; ++i) {
    const double x = bounds.min().x + static_cast<double>(i) * step;
    for (long j = 0; j <= ny; ++j) {
      const double y = bounds.min().y + static_cast<double>(j) * step;
      double z_lo = bounds.min().z, z_hi = bounds.min().z + static_cast<double>(nz) * step;
      bool ok = true;
      for (const auto& s : spheres) {
        const double dx = x - s.center.x, dy = y - s.center.y;
        const double h2 = s.radius * s.radius - dx * dx - dy * dy;
        if (h2 < 0.0) {
          ok = false;
          break;
        }
        const double h = std::sqrt(h2);
        z_lo = std::max(z_lo, s.center.z - h);
        z_hi = std::min(z_hi, s.center.z + h);
        if (z_lo > z_hi) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (long k = std::max(0L, static_cast<long>(std::ceil((z_lo - bounds.min().z) / step - 1e-9))); k <= nz; ++k) {
        const Point3 p{x, y, bounds.min().z + static_cast<double>(k) * step};
        if (p.z > z_hi + 1e-9) break;
        if (std::all_of(spheres.begin(), spheres.end(),
                        [&](const Sphere& s) { return distance(p, s.center) <= s.radius; })) {
          return true;
        }
      }
    }
  }
  return false;
}

struct RandomInstance {
  std::vector<SnrConstraint> constraints;
  double tx_power_dbm = 0.0;
};

// 1 to 5 constraints with centers uniform in the cube and thresholds drawn
// from the default MCS table; the power is drawn so that the spheres are
// comparable to the cube, which mixes feasible and infeasible instances.
inline RandomInstance random_instance(std::mt19937_64& rng, double cube_m) {
  const McsTable table = McsTable::vht160_single_stream();
  RandomInstance inst;
  const int n = std::uniform_int_distribution<int>(1, 5)(rng);
  std::uniform_real_distribution<double> coord(0.0, cube_m);
  std::uniform_int_distribution<std::size_t> row(0, table.size() - 1);
  for (int i = 0; i < n; ++i) {
    const McsEntry& e = table.entries()[row(rng)];
    inst.constraints.push_back({i + 1, {coord(rng), coord(rng), coord(rng)}, e.min_snr_db, e.data_rate_bps, e.index,
                                e.data_rate_bps});
  }
  // d_max = 10^((K + P - snr) / 20); aim radii between 0.1 and 0.8 cube sides.
  const double k = link_constant_db(RadioConfig{});
  const double target = std::uniform_real_distribution<double>(0.1, 0.8)(rng) * cube_m;
  double mean_snr = 0.0;
  for (const auto& c : inst.constraints) mean_snr += c.min_snr_db / n;
  inst.tx_power_dbm = std::round(20.0 * std::log10(target) + mean_snr - k);
  return inst;
}

inline std::vector<Sphere> spheres_of(const RandomInstance& inst) {
  std::vector<Sphere> out;
  for (const auto& c : inst.constraints) {
    out.push_back({c.center, max_distance(inst.tx_power_dbm, c.min_snr_db, RadioConfig{})});
  }
  return out;
}

}  // namespace gwp::testing
