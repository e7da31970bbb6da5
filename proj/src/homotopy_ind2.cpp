#include "spherelab/homotopy_ind2.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spherelab {

So3Path frame_path(const DiscreteCurve& c) {
  const std::size_t n = c.size();
  if (n < 64) throw Error(ErrorCode::SamplingTooCoarse, "frame path needs at least 64 vertices");
  std::vector<Vec3> tangents(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const Vec3& x = c[i];
    const Vec3 d = c.at(ii + 1).vec() - c.at(ii - 1).vec();
    const Vec3 t = d - dot(d, x) * x;
    const double tn = norm(t);
    if (tn < 1e-14) throw Error(ErrorCode::SamplingTooCoarse, "tangent undefined at vertex " + std::to_string(i));
    tangents[i] = t / tn;
  }
  So3Path path;
  path.frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& x = c[i];
    path.frames.push_back(Mat3::from_columns(x, tangents[i], cross(x, tangents[i])));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Mat3 rel = path.frames[i].transpose() * path.frames[(i + 1) % n];
    const double cos_angle = 0.5 * (rel(0, 0) + rel(1, 1) + rel(2, 2) - 1.0);
    if (cos_angle <= std::cos(std::numbers::pi / 4.0))
      throw Error(ErrorCode::SamplingTooCoarse, "frame turns by >= pi/4 after vertex " + std::to_string(i));
  }
  return path;
}

QuaternionLift lift_to_quaternions(const So3Path& path) {
  QuaternionLift out;
  out.lift.reserve(path.frames.size());
  for (const auto& r : path.frames) {
    Quaternion q = quaternion_from_matrix(r);
    if (!out.lift.empty() && dot(q, out.lift.back()) < 0.0) q = -q;
    out.lift.push_back(q);
  }
  if (out.lift.empty()) return out;
  // Continue the lift across the closing step back to frame 0.
  Quaternion closing = quaternion_from_matrix(path.frames.front());
  if (dot(closing, out.lift.back()) < 0.0) closing = -closing;
  const Quaternion& q0 = out.lift.front();
  if (norm(closing - q0) < 1e-6) {
    out.holonomy_sign = 1;
  } else if (norm(closing + q0) < 1e-6) {
    out.holonomy_sign = -1;
  } else {
    throw Error(ErrorCode::DiscontinuousPath, "quaternion lift does not close up to sign");
  }
  return out;
}

Ind2Value ind2(const DiscreteCurve& c) {
  return lift_to_quaternions(frame_path(c)).holonomy_sign == 1 ? Ind2Value::Zero : Ind2Value::One;
}

}  // namespace spherelab
