#pragma once

// Traffic-aware gateway placement. Every FAP demand selects an MCS, whose SNR
// threshold bounds the gateway to a sphere around that FAP; the gateway must sit
// in the intersection of all spheres (the placement subspace). The common
// transmission power is raised 1 dBm at a time from 0 dBm until the
// intersection is non-empty inside the venue.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gwp/geometry.hpp"
#include "gwp/rf.hpp"

namespace gwp {

struct FapState {
  int id = 0;
  Point3 position;
  // Link capacity the FAP needs from the gateway (selects its MCS).
  double demand_bps = 0.0;
};

struct SnrConstraint {
  int fap_id = 0;
  Point3 center;
  double min_snr_db = 0.0;
  double demand_bps = 0.0;
  int mcs_index = 0;
  double data_rate_bps = 0.0;
};

struct SolverOptions {
  // A point is accepted when every sphere is violated by at most this much.
  double feasibility_tol_m = 1e-3;
  // Pattern search stops once its step drops below this.
  double position_tol_m = 1e-3;
  // Minimum gateway/FAP separation.
  double separation_m = 0.01;
};

struct PlacementSolution {
  double tx_power_dbm = 0.0;
  Point3 position;
  // max_distance - distance per constraint, in constraint order.
  std::vector<double> slacks_m;
  // Worst excess max_i(d_i - d_max_i) at the returned point.
  double excess_m = 0.0;
  // Sum of the data rates of the MCS selected for each FAP.
  double required_capacity_bps = 0.0;
  std::vector<SnrConstraint> constraints;
  std::vector<std::string> warnings;
};

struct NoSolution {
  double max_tx_power_dbm = 0.0;
  // Smallest worst-case excess reached at max_tx_power_dbm.
  double best_excess_m = 0.0;
};

using SolveResult = std::variant<PlacementSolution, NoSolution>;

struct MinMaxResult {
  Point3 point;
  double excess_m = 0.0;
};

struct CapacityReport {
  double required_capacity_bps = 0.0;
  double total_demand_bps = 0.0;
  std::vector<std::string> warnings;
};

// One constraint per FAP, in input order. Propagates DemandUnsatisfiable.
std::vector<SnrConstraint> build_constraints(std::span<const FapState> faps, const McsTable& table);

// Per-constraint slack; all >= 0 exactly when point lies in the placement subspace.
std::vector<double> check_point(const Point3& point, std::span<const SnrConstraint> constraints,
                                double tx_power_dbm, const RadioConfig& config);

// g(p) = max_i (|p - c_i| - d_max_i).
double max_excess(const Point3& point, std::span<const SnrConstraint> constraints, double tx_power_dbm,
                  const RadioConfig& config);

// Minimizes g over the venue. g <= 0 iff the placement subspace meets the venue.
// Throws DomainError when constraints is empty.
MinMaxResult min_max_excess(std::span<const SnrConstraint> constraints, double tx_power_dbm,
                            const RadioConfig& config, const Cuboid& bounds, const SolverOptions& options = {});

SolveResult gwp_solve(std::span<const FapState> faps, const McsTable& table, const RadioConfig& config,
                      const Cuboid& bounds, const SolverOptions& options = {});

// Sum of demand-matched MCS rates; warns when total demand exceeds the
// channel capacity.
CapacityReport required_capacity(std::span<const FapState> faps, const McsTable& table,
                                 const RadioConfig& config = {});

}  // namespace gwp
