#pragma once

#include <iosfwd>

namespace gwp {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point3& operator+=(const Point3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Point3& operator-=(const Point3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Point3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend Point3 operator+(Point3 a, const Point3& b) { return a += b; }
  friend Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
  friend Point3 operator*(Point3 a, double s) { return a *= s; }
  friend Point3 operator*(double s, Point3 a) { return a *= s; }
  friend bool operator==(const Point3&, const Point3&) = default;

  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  bool is_finite() const;
};

double norm(const Point3& p);
double distance(const Point3& a, const Point3& b);
// Linear interpolation; s = 0 gives a, s = 1 gives b.
Point3 lerp(const Point3& a, const Point3& b, double s);

std::ostream& operator<<(std::ostream& os, const Point3& p);

// Axis-aligned box, max strictly greater than min on every axis.
class Cuboid {
 public:
  Cuboid(Point3 min_corner, Point3 max_corner);
  // Box anchored at the origin.
  static Cuboid from_extent(double x_max, double y_max, double z_max);

  const Point3& min() const noexcept { return min_; }
  const Point3& max() const noexcept { return max_; }
  Point3 extent() const { return max_ - min_; }
  double diagonal() const;

  // Inclusive; tol widens the box on every side.
  bool contains(const Point3& p, double tol = 0.0) const;
  Point3 clamp(const Point3& p) const;

  friend bool operator==(const Cuboid&, const Cuboid&) = default;

 private:
  Point3 min_;
  Point3 max_;
};

}  // namespace gwp
