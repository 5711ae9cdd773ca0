#include "gwp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gwp/error.hpp"

namespace gwp {

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> warnings;
  radio.validate();
  if (!(duration_s > 0.0)) throw ConfigError("scenario duration must be > 0");
  if (!(sample_period_s > 0.0)) throw ConfigError("sample period must be > 0");
  if (!(update_period_s > 0.0)) throw ConfigError("update period must be > 0");
  if (update_period_s < 1.0) {
    warnings.push_back("update period below 1 s; placements are meant to change slowly");
  }
  std::vector<int> ids;
  for (const auto& fap : faps) {
    const auto id = std::to_string(fap.id());
    if (!(fap.offered_bps >= 0.0)) throw ConfigError("FAP " + id + ": offered load must be >= 0");
    if (!(fap.link_demand_bps > 0.0)) throw ConfigError("FAP " + id + ": link demand must be > 0");
    if (!fap.trajectory.covers(0.0, duration_s)) {
      throw ConfigError("FAP " + id + ": trajectory does not cover [0, duration]");
    }
    for (const auto& s : fap.trajectory.samples()) {
      if (!bounds.contains(s.position, 1e-9)) {
        std::ostringstream os;
        os << "FAP " << id << " leaves the venue at t = " << s.time_s << " s";
        throw ConfigError(os.str());
      }
    }
    ids.push_back(fap.id());
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw ConfigError("duplicate FAP id");
  for (const auto& c : candidates) {
    if (!bounds.contains(c.position, 1e-9)) throw ConfigError("candidate " + c.name + " lies outside the venue");
  }
  return warnings;
}

bool Scenario::is_static() const {
  return std::all_of(faps.begin(), faps.end(), [](const FapTrack& f) {
    const auto& s = f.trajectory.samples();
    return std::all_of(s.begin(), s.end(), [&](const TrajectorySample& x) { return x.position == s.front().position; });
  });
}

std::vector<FapState> Scenario::fap_states_at(double t) const {
  std::vector<FapState> out;
  out.reserve(faps.size());
  for (const auto& f : faps) out.push_back({f.id(), f.trajectory.position_at(t), f.link_demand_bps});
  return out;
}

Scenario with_duration(const Scenario& scenario, double duration_s) {
  if (!(duration_s > 0.0)) throw DomainError("duration must be > 0");
  Scenario s = scenario;
  const bool single_update = s.update_period_s >= s.duration_s;
  for (auto& f : s.faps) {
    const auto& samples = f.trajectory.samples();
    const bool stationary = !samples.empty() && std::all_of(samples.begin(), samples.end(), [&](const auto& x) {
      return x.position == samples.front().position;
    });
    if (stationary) {
      f.trajectory = Trajectory::stationary(f.id(), samples.front().position, duration_s, s.sample_period_s);
    } else if (!f.trajectory.covers(0.0, duration_s)) {
      throw ConfigError("FAP " + std::to_string(f.id()) + ": trace shorter than the requested duration");
    }
  }
  s.duration_s = duration_s;
  if (single_update) s.update_period_s = duration_s;
  return s;
}

double DemandProfile::offered_bps(int fap_id) const {
  if (!(lambda1_bps > 0.0) || !(lambda2_bps > 0.0)) throw DomainError("zone loads must be > 0");
  const auto it = zone_by_fap.find(fap_id);
  if (it == zone_by_fap.end()) throw DomainError("FAP " + std::to_string(fap_id) + " has no zone");
  return it->second == 2 ? lambda2_bps : lambda1_bps;
}

double fair_share(int n_uavs) {
  if (n_uavs < 2) throw DomainError("fair share needs at least one FAP and the gateway");
  return kReferenceRateBps / static_cast<double>(n_uavs - 1);
}

namespace {

double link_demand(double offered_bps, double factor) { return std::round(offered_bps * factor); }

}  // namespace

Scenario scenario_a(const ScenarioAOptions& options) {
  if (!(options.demand_high_fraction > 0.0) || !(options.ratio > 0.0) || !(options.capacity_factor > 0.0)) {
    throw DomainError("scenario A parameters must be > 0");
  }
  Scenario s;
  s.name = "scenario-a";
  s.bounds = Cuboid::from_extent(30.0, 30.0, 20.0);
  s.duration_s = options.duration_s;
  s.update_period_s = options.duration_s;
  s.sample_period_s = 1.0;

  const double share = fair_share(5);
  DemandProfile profile;
  profile.lambda2_bps = options.demand_high_fraction * share;
  profile.lambda1_bps = profile.lambda2_bps / options.ratio;

  struct Spot {
    int id;
    Point3 position;
    int zone;
  };
  // Right side (x = 30) is the high-demand zone.
  const Spot spots[] = {{1, {30.0, 0.0, 10.0}, 2}, {2, {30.0, 30.0, 10.0}, 2}, {3, {0.0, 30.0, 10.0}, 1},
                        {4, {0.0, 0.0, 10.0}, 1}};
  for (const auto& spot : spots) profile.zone_by_fap[spot.id] = spot.zone;
  for (const auto& spot : spots) {
    const double offered = profile.offered_bps(spot.id);
    s.faps.push_back({Trajectory::stationary(spot.id, spot.position, s.duration_s, s.sample_period_s), offered,
                      link_demand(offered, options.capacity_factor), spot.zone});
  }

  // Corridor positions through the venue center, 7.5 m apart (approximate
  // layout); pos5 is the FAP centroid.
  s.candidates = {
      {"pos1", {30.0, 15.0, 10.0}}, {"pos2", {22.5, 15.0, 10.0}}, {"pos3", {15.0, 7.5, 10.0}},
      {"pos4", {15.0, 22.5, 10.0}}, {"pos5", {15.0, 15.0, 10.0}}, {"pos6", {7.5, 15.0, 10.0}},
      {"pos7", {0.0, 15.0, 10.0}},
  };
  if (options.include_gwp_candidate) {
    const auto faps = s.fap_states_at(0.0);
    const SolveResult r = gwp_solve(faps, s.mcs_table, s.radio, s.bounds);
    if (const auto* sol = std::get_if<PlacementSolution>(&r)) s.candidates.push_back({"pos8-gwp", sol->position});
  }
  return s;
}

Scenario generate_two_zone(int n_faps, const Cuboid& bounds, double lambda1_bps, double lambda2_bps,
                           double duration_s, std::uint64_t seed, const TwoZoneOptions& options) {
  if (n_faps < 2) throw DomainError("two-zone scenario needs at least 2 FAPs");
  if (!(lambda1_bps > 0.0) || !(lambda2_bps > 0.0)) throw DomainError("zone loads must be > 0");
  if (!(options.zone_split > 0.0 && options.zone_split < 1.0)) throw DomainError("zone_split must lie in (0, 1)");
  if (!(duration_s > 0.0)) throw DomainError("duration must be > 0");

  const double split_x = bounds.min().x + options.zone_split * bounds.extent().x;
  const Cuboid zone1(bounds.min(), {split_x, bounds.max().y, bounds.max().z});
  const Cuboid zone2({split_x, bounds.min().y, bounds.min().z}, bounds.max());
  const int n_zone2 = (n_faps + 1) / 2;
  const int n_zone1 = n_faps - n_zone2;
  const double factor = options.capacity_factor.value_or(static_cast<double>(n_faps));

  Scenario s;
  s.bounds = bounds;
  s.duration_s = duration_s;
  s.sample_period_s = options.sample_period_s;
  s.update_period_s = options.mobile ? options.sample_period_s : duration_s;

  std::mt19937_64 rng(seed);
  for (int id = 1; id <= n_faps; ++id) {
    const int zone = id <= n_zone1 ? 1 : 2;
    const Cuboid& box = zone == 1 ? zone1 : zone2;
    const double offered = zone == 1 ? lambda1_bps : lambda2_bps;
    Trajectory track;
    if (options.mobile) {
      const std::uint64_t track_seed = rng();
      track = random_waypoint_track(box, options.speed_min_mps, options.speed_max_mps, duration_s,
                                    options.sample_period_s, track_seed, id);
    } else {
      Point3 p;
      for (int axis = 0; axis < 3; ++axis) {
        p[axis] = std::uniform_real_distribution<double>(box.min()[axis], box.max()[axis])(rng);
      }
      track = Trajectory::stationary(id, p, duration_s, options.sample_period_s);
    }
    s.faps.push_back({std::move(track), offered, link_demand(offered, factor), zone});
  }
  std::ostringstream name;
  name << "two-zone-n" << n_faps << "-seed" << seed;
  s.name = name.str();
  return s;
}

std::vector<std::string> builtin_scenario_names() { return {"scenario-a", "scenario-b-90-10", "scenario-b-75-25"}; }

Scenario builtin_scenario(const std::string& name, std::uint64_t seed) {
  if (name == "scenario-a") return scenario_a();
  const double share = fair_share(11);
  const Cuboid venue = Cuboid::from_extent(80.0, 80.0, 20.0);
  // Integer percent splits keep the zone loads exact in binary.
  const auto split = [&](int zone2_percent) {
    const double lambda2 = share * zone2_percent / 100.0;
    return generate_two_zone(10, venue, share - lambda2, lambda2, 130.0, seed);
  };
  Scenario s;
  if (name == "scenario-b-90-10") {
    s = split(90);
  } else if (name == "scenario-b-75-25") {
    s = split(75);
  } else {
    throw DomainError("unknown builtin scenario '" + name + "'");
  }
  s.name = name;
  return s;
}

std::vector<std::pair<double, double>> GatewayPlan::tx_power_schedule() const {
  std::vector<std::pair<double, double>> out;
  for (const auto& step : steps) {
    if (step.solution) out.emplace_back(step.time_s, step.solution->tx_power_dbm);
  }
  return out;
}

std::vector<double> update_instants(const Scenario& scenario) {
  std::vector<double> out;
  for (long long k = 0;; ++k) {
    const double t = static_cast<double>(k) * scenario.update_period_s;
    if (t > scenario.duration_s + 1e-9) break;
    out.push_back(std::min(t, scenario.duration_s));
  }
  return out;
}

namespace {

Point3 place_at(const Scenario& scenario, const PlacementStrategy& strategy, double t, const SolverOptions& options,
                std::optional<PlacementSolution>& solution) {
  const std::vector<FapState> faps = scenario.fap_states_at(t);
  struct Visitor {
    const Scenario& scenario;
    const std::vector<FapState>& faps;
    double t;
    const SolverOptions& options;
    std::optional<PlacementSolution>& solution;

    Point3 operator()(const strategy::Gwp&) const {
      SolveResult r = gwp_solve(faps, scenario.mcs_table, scenario.radio, scenario.bounds, options);
      if (const auto* none = std::get_if<NoSolution>(&r)) {
        throw InfeasiblePlacement(t, none->max_tx_power_dbm, none->best_excess_m);
      }
      solution = std::move(std::get<PlacementSolution>(r));
      return solution->position;
    }
    Point3 operator()(const strategy::FapCentroid&) const { return fap_centroid(faps); }
    Point3 operator()(const strategy::VenueCenter&) const { return venue_center(scenario.bounds); }
    Point3 operator()(const strategy::FixedPosition& f) const { return f.position; }
    Point3 operator()(const strategy::RandomWaypoint&) const { return venue_center(scenario.bounds); }
  };
  return std::visit(Visitor{scenario, faps, t, options, solution}, strategy);
}

}  // namespace

GatewayPlan plan_gateway_track(const Scenario& scenario, const PlacementStrategy& strategy,
                               const SolverOptions& options) {
  validate(strategy);
  GatewayPlan plan;
  plan.strategy = strategy_name(strategy);

  if (const auto* rw = std::get_if<strategy::RandomWaypoint>(&strategy)) {
    plan.track = random_waypoint_track(scenario.bounds, rw->speed_min_mps, rw->speed_max_mps, scenario.duration_s,
                                       scenario.sample_period_s, rw->seed, 0);
    return plan;
  }

  std::vector<TrajectorySample> knots;
  for (const double t : update_instants(scenario)) {
    PlanStep step;
    step.time_s = t;
    step.position = place_at(scenario, strategy, t, options, step.solution);
    knots.push_back({t, step.position});
    plan.steps.push_back(std::move(step));
  }
  const Trajectory knot_track(0, std::move(knots));

  std::vector<TrajectorySample> samples;
  for (const double t : sample_grid(scenario.duration_s, scenario.sample_period_s)) {
    const double clamped = std::min(t, knot_track.end_time());
    samples.push_back({t, knot_track.position_at(clamped)});
  }
  plan.track = Trajectory(0, std::move(samples));
  return plan;
}

}  // namespace gwp
