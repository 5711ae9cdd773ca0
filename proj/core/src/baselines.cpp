#include "gwp/baselines.hpp"

#include <random>

#include "gwp/error.hpp"

namespace gwp {

std::string strategy_name(const PlacementStrategy& s) {
  struct Visitor {
    std::string operator()(const strategy::Gwp&) const { return "gwp"; }
    std::string operator()(const strategy::FapCentroid&) const { return "centroid"; }
    std::string operator()(const strategy::VenueCenter&) const { return "venue-center"; }
    std::string operator()(const strategy::RandomWaypoint&) const { return "random"; }
    std::string operator()(const strategy::FixedPosition& f) const { return "fixed:" + f.name; }
  };
  return std::visit(Visitor{}, s);
}

PlacementStrategy parse_strategy(const std::string& name, std::uint64_t seed) {
  if (name == "gwp") return strategy::Gwp{};
  if (name == "centroid" || name == "max-snr") return strategy::FapCentroid{};
  if (name == "venue-center") return strategy::VenueCenter{};
  if (name == "random") return strategy::RandomWaypoint{0.5, 3.0, seed};
  throw DomainError("unknown placement strategy '" + name + "'");
}

void validate(const PlacementStrategy& s) {
  if (const auto* rw = std::get_if<strategy::RandomWaypoint>(&s)) {
    if (!(rw->speed_min_mps > 0.0) || !(rw->speed_min_mps <= rw->speed_max_mps)) {
      throw DomainError("random waypoint speeds need 0 < speed_min <= speed_max");
    }
  }
  if (const auto* f = std::get_if<strategy::FixedPosition>(&s); f && !f->position.is_finite()) {
    throw DomainError("fixed position must be finite");
  }
}

Point3 fap_centroid(std::span<const Point3> positions) {
  if (positions.empty()) throw DomainError("centroid of an empty FAP set");
  Point3 sum;
  for (const auto& p : positions) sum += p;
  return sum * (1.0 / static_cast<double>(positions.size()));
}

Point3 fap_centroid(std::span<const FapState> faps) {
  std::vector<Point3> positions;
  positions.reserve(faps.size());
  for (const auto& f : faps) positions.push_back(f.position);
  return fap_centroid(std::span<const Point3>(positions));
}

Point3 venue_center(const Cuboid& bounds) { return lerp(bounds.min(), bounds.max(), 0.5); }

double WaypointLeg::duration_s() const { return distance(from, to) / speed_mps; }

namespace {

Point3 uniform_point(std::mt19937_64& rng, const Cuboid& bounds) {
  Point3 p;
  for (int axis = 0; axis < 3; ++axis) {
    p[axis] = std::uniform_real_distribution<double>(bounds.min()[axis], bounds.max()[axis])(rng);
  }
  return p;
}

}  // namespace

std::vector<WaypointLeg> random_waypoint_legs(const Cuboid& bounds, double speed_min_mps, double speed_max_mps,
                                              double duration_s, std::uint64_t seed) {
  validate(PlacementStrategy{strategy::RandomWaypoint{speed_min_mps, speed_max_mps, seed}});
  if (!(duration_s > 0.0)) throw DomainError("duration must be > 0");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> speed(speed_min_mps, speed_max_mps);
  std::vector<WaypointLeg> legs;
  Point3 here = uniform_point(rng, bounds);
  double t = 0.0;
  while (t <= duration_s) {
    WaypointLeg leg{t, here, uniform_point(rng, bounds), speed_min_mps == speed_max_mps ? speed_min_mps : speed(rng)};
    t += leg.duration_s();
    here = leg.to;
    legs.push_back(leg);
  }
  return legs;
}

Trajectory random_waypoint_track(const Cuboid& bounds, double speed_min_mps, double speed_max_mps,
                                 double duration_s, double sample_period_s, std::uint64_t seed, int node_id) {
  const std::vector<WaypointLeg> legs = random_waypoint_legs(bounds, speed_min_mps, speed_max_mps, duration_s, seed);
  std::vector<TrajectorySample> samples;
  std::size_t leg = 0;
  for (const double t : sample_grid(duration_s, sample_period_s)) {
    while (leg + 1 < legs.size() && legs[leg + 1].start_time_s <= t) ++leg;
    const WaypointLeg& l = legs[leg];
    const double span = l.duration_s();
    const double s = span > 0.0 ? std::min(1.0, (t - l.start_time_s) / span) : 1.0;
    samples.push_back({t, bounds.clamp(lerp(l.from, l.to, s))});
  }
  return Trajectory(node_id, std::move(samples));
}

}  // namespace gwp
