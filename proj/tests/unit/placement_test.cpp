#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "grid_oracle.hpp"
#include "gwp/error.hpp"
#include "gwp/placement.hpp"

namespace gwp {
namespace {

using testing::golden;

const Cuboid kVenueA = Cuboid::from_extent(30, 30, 20);

std::vector<FapState> worked_faps() {
  return {{1, {30, 0, 10}, 702e6}, {2, {30, 30, 10}, 702e6}, {3, {0, 30, 10}, 234e6}, {4, {0, 0, 10}, 234e6}};
}

std::vector<SnrConstraint> worked_constraints() {
  const auto faps = worked_faps();
  return build_constraints(faps, McsTable::vht160_single_stream());
}

TEST(BuildConstraints, DemandsMapToThresholds) {
  const auto c = worked_constraints();
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].min_snr_db, 35.0);
  EXPECT_EQ(c[0].mcs_index, 8);
  EXPECT_EQ(c[0].data_rate_bps, 702e6);
  EXPECT_EQ(c[2].min_snr_db, 20.0);
  EXPECT_EQ(c[2].mcs_index, 3);
  EXPECT_EQ(c[3].center, (Point3{0, 0, 10}));
  EXPECT_TRUE(build_constraints({}, McsTable::vht160_single_stream()).empty());
}

TEST(BuildConstraints, PropagatesUnsatisfiableDemand) {
  const std::vector<FapState> faps{{1, {1, 1, 1}, 800e6}};
  EXPECT_THROW(build_constraints(faps, McsTable::vht160_single_stream()), DemandUnsatisfiable);
}

TEST(CheckPoint, ReferencePointIsFeasibleAt22dBm) {
  const auto& g = golden()["placement"];
  const auto slacks = check_point({23.3, 15.4, 3.3}, worked_constraints(), 22.0, RadioConfig{});
  ASSERT_EQ(slacks.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(slacks[i], g["reference_point_slacks_22dbm_m"][i].get<double>(), 1e-9);
    EXPECT_GE(slacks[i], -0.1);
  }
}

TEST(CheckPoint, CoincidentAndBoundaryPoints) {
  const auto c = worked_constraints();
  const double r = max_distance(10.0, 35.0, RadioConfig{});
  EXPECT_DOUBLE_EQ(check_point(c[0].center, c, 10.0, RadioConfig{})[0], r);
  const Point3 on_sphere = c[0].center + Point3{r, 0, 0};
  EXPECT_NEAR(check_point(on_sphere, c, 10.0, RadioConfig{})[0], 0.0, 1e-12);
}

TEST(MinMaxExcess, SingleConstraintReturnsCenter) {
  const std::vector<SnrConstraint> c{{1, {40, 50, 10}, 20.0, 234e6, 3, 234e6}};
  const Cuboid venue = Cuboid::from_extent(100, 100, 20);
  const auto r = min_max_excess(c, 0.0, RadioConfig{}, venue);
  EXPECT_LE(distance(r.point, c[0].center), 1e-3);
  EXPECT_NEAR(r.excess_m, -max_distance(0.0, 20.0, RadioConfig{}), 1e-3);
}

TEST(MinMaxExcess, TwoTouchingSpheresMeetAtMidpoint) {
  const double r = max_distance(10.0, 20.0, RadioConfig{});
  const std::vector<SnrConstraint> c{{1, {50, 50, 10}, 20.0, 1, 3, 1}, {2, {50 + 2 * r, 50, 10}, 20.0, 1, 3, 1}};
  const Cuboid venue = Cuboid::from_extent(200, 100, 20);
  const auto res = min_max_excess(c, 10.0, RadioConfig{}, venue);
  EXPECT_LE(distance(res.point, {50 + r, 50, 10}), 1e-3);
  EXPECT_NEAR(res.excess_m, 0.0, 1e-6);
}

TEST(MinMaxExcess, MatchesOracleAcrossPowerSweep) {
  const auto c = worked_constraints();
  for (const auto& row : golden()["placement"]["sweep"]) {
    const double pt = row["tx_power_dbm"].get<double>();
    const auto r = min_max_excess(c, pt, RadioConfig{}, kVenueA);
    const auto& p = row["point"];
    const Point3 expected{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    EXPECT_NEAR(r.excess_m, row["min_excess_m"].get<double>(), 1e-4) << "P_T " << pt;
    EXPECT_LE(distance(r.point, expected), 1e-3) << "P_T " << pt << " got " << r.point;
    EXPECT_LE(r.excess_m, row["grid_min_excess_m"].get<double>() + 1e-9) << "P_T " << pt;
  }
}

TEST(MinMaxExcess, WorkedInstanceFeasibleAt22dBm) {
  const auto c = worked_constraints();
  const auto r = min_max_excess(c, 22.0, RadioConfig{}, kVenueA);
  EXPECT_LE(r.excess_m, 0.0);
  for (const double s : check_point(r.point, c, 22.0, RadioConfig{})) EXPECT_GE(s, 0.0);
  std::vector<testing::Sphere> spheres;
  for (const auto& x : c) spheres.push_back({x.center, max_distance(22.0, x.min_snr_db, RadioConfig{})});
  EXPECT_TRUE(testing::grid_has_feasible_point(spheres, kVenueA, 0.25));
}

TEST(MinMaxExcess, StaysInsideBounds) {
  const std::vector<SnrConstraint> c{{1, {0, 0, 0}, 20.0, 1, 3, 1}, {2, {10, 0, 0}, 20.0, 1, 3, 1}};
  const Cuboid venue({0, 0, 0}, {10, 10, 10});
  const auto r = min_max_excess(c, 0.0, RadioConfig{}, venue);
  EXPECT_TRUE(venue.contains(r.point));
  EXPECT_THROW(min_max_excess({}, 0.0, RadioConfig{}, venue), DomainError);
}

TEST(MinMaxExcess, TranslationInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing::random_instance(rng, 40.0);
    const Point3 shift{13.5, -7.25, 31.0};
    auto moved = inst.constraints;
    for (auto& c : moved) c.center += shift;
    const Cuboid a({0, 0, 0}, {40, 40, 40});
    const Cuboid b(a.min() + shift, a.max() + shift);
    const auto ra = min_max_excess(inst.constraints, inst.tx_power_dbm, RadioConfig{}, a);
    const auto rb = min_max_excess(moved, inst.tx_power_dbm, RadioConfig{}, b);
    EXPECT_NEAR(ra.excess_m, rb.excess_m, 1e-6);
    EXPECT_NEAR(max_excess(ra.point + shift, moved, inst.tx_power_dbm, RadioConfig{}), ra.excess_m, 1e-9);
  }
}

TEST(MinMaxExcess, FeasibilityMonotoneInPower) {
  const auto c = worked_constraints();
  bool seen_feasible = false;
  for (int pt = 0; pt <= 30; ++pt) {
    const auto r = min_max_excess(c, pt, RadioConfig{}, kVenueA);
    if (seen_feasible) {
      EXPECT_LE(r.excess_m, 0.0) << pt;
    }
    if (r.excess_m <= 0.0) {
      seen_feasible = true;
      EXPECT_LE(max_excess(r.point, c, pt + 1, RadioConfig{}), 0.0);
    }
  }
  EXPECT_TRUE(seen_feasible);
}

TEST(MinMaxExcess, AgreesWithGridScanOnRandomInstances) {
  std::mt19937_64 rng(2024);
  const Cuboid cube = Cuboid::from_extent(30, 30, 30);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_instance(rng, 30.0);
    const auto r = min_max_excess(inst.constraints, inst.tx_power_dbm, RadioConfig{}, cube);
    const bool grid = testing::grid_has_feasible_point(testing::spheres_of(inst), cube, 0.25);
    if (grid) EXPECT_LE(r.excess_m, 1e-3) << "trial " << trial;
    if (r.excess_m <= -0.5) EXPECT_TRUE(grid) << "trial " << trial;
    (r.excess_m <= 0.0 ? feasible : infeasible)++;
  }
  EXPECT_GT(feasible, 0);
  EXPECT_GT(infeasible, 0);
}

TEST(GwpSolve, WorkedInstance) {
  const auto faps = worked_faps();
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult res = gwp_solve(faps, McsTable::vht160_single_stream(), RadioConfig{}, kVenueA);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_TRUE(std::holds_alternative<PlacementSolution>(res));
  const auto& sol = std::get<PlacementSolution>(res);
  EXPECT_LE(sol.tx_power_dbm, 22.0);
  EXPECT_EQ(sol.tx_power_dbm, golden()["placement"]["min_feasible_tx_power_dbm"].get<double>());
  for (const double s : sol.slacks_m) EXPECT_GE(s, -1e-3);
  EXPECT_TRUE(kVenueA.contains(sol.position));
  for (const auto& f : faps) EXPECT_GE(distance(sol.position, f.position), 0.01);
  EXPECT_DOUBLE_EQ(sol.required_capacity_bps, golden()["placement"]["required_capacity_bps"].get<double>());
  const auto below = min_max_excess(sol.constraints, sol.tx_power_dbm - 1, RadioConfig{}, kVenueA);
  EXPECT_GT(below.excess_m, 1e-3);
  EXPECT_LT(elapsed, 1.0);
}

TEST(GwpSolve, SingleFapNeedsNoPower) {
  const std::vector<FapState> faps{{1, {0, 0, 10}, 234e6}};
  const SolveResult res =
      gwp_solve(faps, McsTable::vht160_single_stream(), RadioConfig{}, Cuboid::from_extent(100, 100, 20));
  ASSERT_TRUE(std::holds_alternative<PlacementSolution>(res));
  const auto& sol = std::get<PlacementSolution>(res);
  EXPECT_EQ(sol.tx_power_dbm, 0.0);
  const double d = distance(sol.position, faps[0].position);
  EXPECT_LE(d, max_distance(0.0, 20.0, RadioConfig{}));
  EXPECT_GE(d, 0.01);
}

TEST(GwpSolve, ReportsNoSolutionAboveMaxPower) {
  RadioConfig cfg;
  cfg.max_tx_power_dbm = 10.0;
  const auto faps = worked_faps();
  const SolveResult res = gwp_solve(faps, McsTable::vht160_single_stream(), cfg, kVenueA);
  ASSERT_TRUE(std::holds_alternative<NoSolution>(res));
  EXPECT_EQ(std::get<NoSolution>(res).max_tx_power_dbm, 10.0);
  EXPECT_GT(std::get<NoSolution>(res).best_excess_m, 0.0);
}

TEST(GwpSolve, Errors) {
  const McsTable t = McsTable::vht160_single_stream();
  const std::vector<FapState> greedy{{1, {1, 1, 1}, 1e9}};
  EXPECT_THROW(gwp_solve(greedy, t, RadioConfig{}, kVenueA), DemandUnsatisfiable);
  const std::vector<FapState> outside{{1, {40, 1, 1}, 1e6}};
  EXPECT_THROW(gwp_solve(outside, t, RadioConfig{}, kVenueA), DomainError);
  EXPECT_THROW(gwp_solve({}, t, RadioConfig{}, kVenueA), DomainError);
}

TEST(GwpSolve, Deterministic) {
  const auto faps = worked_faps();
  const auto a = std::get<PlacementSolution>(gwp_solve(faps, McsTable::vht160_single_stream(), RadioConfig{}, kVenueA));
  const auto b = std::get<PlacementSolution>(gwp_solve(faps, McsTable::vht160_single_stream(), RadioConfig{}, kVenueA));
  EXPECT_EQ(a.position, b.position);
  EXPECT_EQ(a.slacks_m, b.slacks_m);
}

TEST(GwpSolve, SeparatesFromCoincidentFap) {
  // Two FAPs with the deepest point on FAP 1 itself.
  const std::vector<FapState> faps{{1, {10, 10, 10}, 234e6}, {2, {12, 10, 10}, 702e6}};
  const auto sol =
      std::get<PlacementSolution>(gwp_solve(faps, McsTable::vht160_single_stream(), RadioConfig{}, kVenueA));
  for (const auto& f : faps) EXPECT_GE(distance(sol.position, f.position), 0.01);
  for (const double s : sol.slacks_m) EXPECT_GE(s, -1e-3);
}

TEST(RequiredCapacity, SumsLinkRates) {
  const auto faps = worked_faps();
  const auto t = McsTable::vht160_single_stream();
  const auto r = required_capacity(faps, t);
  EXPECT_DOUBLE_EQ(r.required_capacity_bps, 1872e6);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(required_capacity({}, t).required_capacity_bps, 0.0);
  const std::vector<FapState> one{{1, {0, 0, 0}, 234e6}};
  EXPECT_DOUBLE_EQ(required_capacity(one, t).required_capacity_bps, 234e6);
  EXPECT_TRUE(required_capacity(one, t).warnings.empty());
}

}  // namespace
}  // namespace gwp
