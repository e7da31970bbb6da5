#pragma once

#include <vector>

#include "spherelab/quaternion.hpp"
#include "spherelab/sphere_geom.hpp"

namespace spherelab {

/// Closed path in SO(3): one frame (position, tangent, normal as columns) per vertex.
struct So3Path {
  std::vector<Mat3> frames;
};

/// Z/2 regular-homotopy class of a closed regular curve on S^2.
enum class Ind2Value : int { Zero = 0, One = 1 };

inline int to_int(Ind2Value v) { return static_cast<int>(v); }

/// Frames from centered-difference tangents. Throws SamplingTooCoarse when N < 64 or the
/// tangent turns by pi/4 or more between consecutive vertices.
So3Path frame_path(const DiscreteCurve& c);

struct QuaternionLift {
  std::vector<Quaternion> lift;  // continuous lift, one per frame
  int holonomy_sign = 1;         // +1 if the lift closes, -1 if it ends at the negative
};

/// Lifts a closed SO(3) path to unit quaternions, choosing at every step the sign nearest the
/// previous lift. Throws DiscontinuousPath if the end matches neither +q0 nor -q0.
QuaternionLift lift_to_quaternions(const So3Path& path);

Ind2Value ind2(const DiscreteCurve& c);

}  // namespace spherelab
