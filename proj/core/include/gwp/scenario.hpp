#pragma once

// Venue, FAP trajectories and demands, the builtin evaluation scenarios, and
// planning of the gateway track under a placement strategy.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwp/baselines.hpp"
#include "gwp/geometry.hpp"
#include "gwp/placement.hpp"
#include "gwp/rf.hpp"
#include "gwp/trajectory.hpp"

namespace gwp {

// Top 802.11ac rate used to define the reference fair share.
inline constexpr double kReferenceRateBps = 780e6;

struct FapTrack {
  Trajectory trajectory;
  // Offered Poisson load (lambda), bit/s.
  double offered_bps = 0.0;
  // Link capacity demanded from the gateway; selects the FAP's MCS constraint.
  double link_demand_bps = 0.0;
  // 0 when the scenario has no zones.
  int zone = 0;

  int id() const { return trajectory.node_id(); }
};

struct NamedPosition {
  std::string name;
  Point3 position;
};

struct Scenario {
  std::string name;
  Cuboid bounds = Cuboid::from_extent(1.0, 1.0, 1.0);
  std::vector<FapTrack> faps;
  double duration_s = 130.0;
  double update_period_s = 130.0;
  double sample_period_s = 1.0;
  RadioConfig radio;
  McsTable mcs_table = McsTable::vht160_single_stream();
  // Fixed gateway positions evaluated alongside the strategies.
  std::vector<NamedPosition> candidates;

  // Throws ConfigError on a violated invariant; returns non-fatal warnings.
  std::vector<std::string> validate() const;
  bool is_static() const;
  std::vector<FapState> fap_states_at(double t) const;
};

// Copy with a new run length. Static FAPs are re-sampled; mobile traces must
// already cover the new duration (ConfigError otherwise). A single-update plan
// stays a single update.
Scenario with_duration(const Scenario& scenario, double duration_s);

// Maps FAP ids to one of two zone loads.
struct DemandProfile {
  double lambda1_bps = 0.0;
  double lambda2_bps = 0.0;
  std::map<int, int> zone_by_fap;

  // Throws DomainError for a non-positive lambda or an unknown FAP.
  double offered_bps(int fap_id) const;
};

// Reference fair share 780 Mbit/s / (n_uavs - 1). Throws DomainError for n_uavs < 2.
double fair_share(int n_uavs);

// Link demand as a multiple of offered load. The Scenario A factor maps the
// offered loads onto the MCS 8 / MCS 3 link capacities (702 / 234 Mbit/s).
inline constexpr double kScenarioACapacityFactor = 4.8;

struct ScenarioAOptions {
  double demand_high_fraction = 0.75;
  double ratio = 3.0;
  double capacity_factor = kScenarioACapacityFactor;
  double duration_s = 130.0;
  // Adds the gateway-placement solution as candidate "pos8-gwp".
  bool include_gwp_candidate = true;
};

// Four static FAPs on a 30 m square at 10 m altitude: right side (x = 30) offers
// demand_high_fraction * L, left side that divided by ratio.
Scenario scenario_a(const ScenarioAOptions& options = {});

struct TwoZoneOptions {
  // Fraction of the venue's x extent given to zone 1.
  double zone_split = 0.5;
  bool mobile = false;
  double speed_min_mps = 0.5;
  double speed_max_mps = 3.0;
  // Link demand = factor * offered; nullopt means (number of FAPs), which
  // keeps every FAP's airtime share at or below 1/n.
  std::optional<double> capacity_factor;
  double sample_period_s = 1.0;
};

// n_faps FAPs uniformly placed in two x-halves of the venue: ceil(n/2) in zone 2
// (lambda2) and the rest in zone 1 (lambda1).
Scenario generate_two_zone(int n_faps, const Cuboid& bounds, double lambda1_bps, double lambda2_bps,
                           double duration_s, std::uint64_t seed, const TwoZoneOptions& options = {});

// Builtins: scenario-a, scenario-b-90-10, scenario-b-75-25 (80x80x20 m, 10 FAPs).
Scenario builtin_scenario(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> builtin_scenario_names();

// Waypoint traces: one line per node, whitespace-separated "t x y z" quadruples.
// Node ids are assigned first_id, first_id + 1, ... in line order.
std::vector<Trajectory> parse_waypoints(std::istream& in, const std::string& source_name = "<waypoints>",
                                        int first_id = 1);
std::vector<Trajectory> load_waypoints(const std::filesystem::path& path, int first_id = 1);
void write_waypoints(std::ostream& out, const std::vector<Trajectory>& trajectories);
void save_waypoints(const std::vector<Trajectory>& trajectories, const std::filesystem::path& path);

// Scenario files: JSON object with a format_version field.
inline constexpr int kScenarioFormatVersion = 1;
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text, const std::string& source_name = "<scenario>");
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

struct PlanStep {
  double time_s = 0.0;
  Point3 position;
  // Set for the Gwp strategy.
  std::optional<PlacementSolution> solution;
};

struct GatewayPlan {
  std::string strategy;
  Trajectory track;
  std::vector<PlanStep> steps;

  // (time, dBm) steps of the Gwp transmission power; empty for other strategies.
  std::vector<std::pair<double, double>> tx_power_schedule() const;
};

// Update instants t_k = k * update_period up to the scenario duration.
std::vector<double> update_instants(const Scenario& scenario);

// Gateway track sampled on the scenario grid, linearly interpolated between
// update instants. Throws InfeasiblePlacement when Gwp has no solution at some t_k.
GatewayPlan plan_gateway_track(const Scenario& scenario, const PlacementStrategy& strategy,
                               const SolverOptions& options = {});

}  // namespace gwp
