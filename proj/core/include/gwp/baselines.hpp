#pragma once

// Counterpart gateway placements: FAP centroid, venue center, random waypoint
// motion, and fixed named positions.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gwp/geometry.hpp"
#include "gwp/placement.hpp"
#include "gwp/trajectory.hpp"

namespace gwp {

namespace strategy {

struct Gwp {};
// Arithmetic mean of the FAP positions; named "centroid" in reports.
struct FapCentroid {};
struct VenueCenter {};
struct RandomWaypoint {
  double speed_min_mps = 0.5;
  double speed_max_mps = 3.0;
  std::uint64_t seed = 1;
};
struct FixedPosition {
  std::string name;
  Point3 position;
};

}  // namespace strategy

using PlacementStrategy = std::variant<strategy::Gwp, strategy::FapCentroid, strategy::VenueCenter,
                                       strategy::RandomWaypoint, strategy::FixedPosition>;

// Short identifier used on the command line and in reports
// (gwp, centroid, venue-center, random, fixed:<name>).
std::string strategy_name(const PlacementStrategy& s);
// Throws DomainError for an unknown name. RandomWaypoint gets default speeds
// and the given seed.
PlacementStrategy parse_strategy(const std::string& name, std::uint64_t seed = 1);
// Throws DomainError when a RandomWaypoint speed range is invalid.
void validate(const PlacementStrategy& s);

// Per-axis mean of the FAP positions. Throws DomainError when empty.
Point3 fap_centroid(std::span<const FapState> faps);
Point3 fap_centroid(std::span<const Point3> positions);

Point3 venue_center(const Cuboid& bounds);

struct WaypointLeg {
  double start_time_s = 0.0;
  Point3 from;
  Point3 to;
  double speed_mps = 0.0;

  double duration_s() const;
};

// Zero-pause random waypoint legs starting from a uniform random point,
// continuing until duration_s is covered.
std::vector<WaypointLeg> random_waypoint_legs(const Cuboid& bounds, double speed_min_mps, double speed_max_mps,
                                              double duration_s, std::uint64_t seed);

Trajectory random_waypoint_track(const Cuboid& bounds, double speed_min_mps, double speed_max_mps,
                                 double duration_s, double sample_period_s, std::uint64_t seed, int node_id = 0);

}  // namespace gwp
