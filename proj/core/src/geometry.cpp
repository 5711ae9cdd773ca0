#include "gwp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gwp/error.hpp"

namespace gwp {

bool Point3::is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

double norm(const Point3& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

double distance(const Point3& a, const Point3& b) { return norm(a - b); }

Point3 lerp(const Point3& a, const Point3& b, double s) { return a + (b - a) * s; }

std::ostream& operator<<(std::ostream& os, const Point3& p) {
  return os << '(' << p.x << ", " << p.y << ", " << p.z << ')';
}

Cuboid::Cuboid(Point3 min_corner, Point3 max_corner) : min_(min_corner), max_(max_corner) {
  if (!min_.is_finite() || !max_.is_finite()) throw DomainError("cuboid corners must be finite");
  for (int axis = 0; axis < 3; ++axis) {
    if (!(max_[axis] > min_[axis])) throw DomainError("cuboid max must exceed min on every axis");
  }
}

Cuboid Cuboid::from_extent(double x_max, double y_max, double z_max) {
  return Cuboid({0.0, 0.0, 0.0}, {x_max, y_max, z_max});
}

double Cuboid::diagonal() const { return norm(extent()); }

bool Cuboid::contains(const Point3& p, double tol) const {
  for (int axis = 0; axis < 3; ++axis) {
    if (p[axis] < min_[axis] - tol || p[axis] > max_[axis] + tol) return false;
  }
  return true;
}

Point3 Cuboid::clamp(const Point3& p) const {
  return {std::clamp(p.x, min_.x, max_.x), std::clamp(p.y, min_.y, max_.y), std::clamp(p.z, min_.z, max_.z)};
}

}  // namespace gwp
