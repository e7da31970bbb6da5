#pragma once

#include <cmath>

#include "spherelab/vec3.hpp"

namespace spherelab {

/// Quaternion w + x i + y j + z k. Unit quaternions double-cover SO(3) and parametrize S^3.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr Quaternion(double w_, const Vec3& v) : w(w_), x(v.x), y(v.y), z(v.z) {}

  constexpr Vec3 vec() const { return {x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
  }
  constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
  constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
};

constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Quaternion& q) { return std::sqrt(dot(q, q)); }
inline Quaternion normalized(const Quaternion& q) { return q * (1.0 / norm(q)); }

/// Unit quaternion of the rotation by `angle` about the unit `axis`.
inline Quaternion axis_angle(const Vec3& axis, double angle) {
  const double h = 0.5 * angle;
  return {std::cos(h), axis * std::sin(h)};
}

/// Rotates v by the unit quaternion q (q v q*).
constexpr Vec3 rotate(const Quaternion& q, const Vec3& v) {
  return (q * Quaternion(0.0, v) * q.conj()).vec();
}

/// Unit quaternion of a proper rotation matrix (Shepperd's branch selection).
Quaternion quaternion_from_matrix(const Mat3& r);

}  // namespace spherelab
