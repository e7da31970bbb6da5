#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spherelab/error.hpp"
#include "spherelab/vec3.hpp"

namespace spherelab {

/// Point of the unit 2-sphere. Construction normalizes, so the norm is 1 to rounding.
class UnitVec3 {
 public:
  UnitVec3() : v_{0.0, 0.0, 1.0} {}
  /// Throws NearZeroVector if |v| <= 1e-14.
  explicit UnitVec3(const Vec3& v);
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3{x, y, z}) {}

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }

 private:
  Vec3 v_;
};

/// Closed polygonal curve on S^2: vertex i is joined to vertex i+1 (mod N) by the
/// shorter great-circle arc.
class DiscreteCurve {
 public:
  static constexpr std::size_t kMinVertices = 16;

  DiscreteCurve() = default;
  /// Validates N >= 16 and distinct consecutive vertices (gap > 1e-10).
  explicit DiscreteCurve(std::vector<UnitVec3> vertices);
  /// Normalizes every input first.
  static DiscreteCurve from_points(std::span<const Vec3> points);

  std::size_t size() const { return vertices_.size(); }
  const UnitVec3& operator[](std::size_t i) const { return vertices_[i]; }
  /// Cyclic access; any integer index is wrapped.
  const UnitVec3& at(std::ptrdiff_t i) const;
  std::span<const UnitVec3> vertices() const { return vertices_; }

  /// Geodesic length of the arc from vertex i to vertex i+1.
  double edge_length(std::size_t i) const;
  std::vector<double> edge_lengths() const;

 private:
  std::vector<UnitVec3> vertices_;
};

/// Point, unit tangent and normal = point x tangent.
struct TangentFrame {
  UnitVec3 point;
  UnitVec3 tangent;
  UnitVec3 normal;
};

/// Builds the frame at `point` whose tangent is `direction` projected to the tangent plane.
TangentFrame make_frame(const UnitVec3& point, const Vec3& direction);

UnitVec3 project_to_sphere(const Vec3& v);

/// cos|w| base + sin|w| w/|w|; throws NotTangent unless w is orthogonal to base.
UnitVec3 exp_map(const UnitVec3& base, const Vec3& tangent_displacement);

/// Levi-Civita transport of v (tangent at `from`) along the minimizing geodesic to `to`.
Vec3 parallel_transport(const Vec3& v, const UnitVec3& from, const UnitVec3& to);

/// Resamples to N vertices equally spaced in arclength, starting at vertex 0.
/// Positions come from cyclic cubic Lagrange interpolation in arclength, then projection.
DiscreteCurve resample_uniform(const DiscreteCurve& c, std::size_t n);

double curve_length(const DiscreteCurve& c);

/// Relative spread (max - min) / mean of the geodesic edge lengths.
double edge_length_spread(const DiscreteCurve& c);

/// Number of self-intersection points. Intersections between non-adjacent arcs are
/// collected (touching and overlapping arcs included) and merged into one point when they
/// lie within 1e-6 of each other or continue along neighbouring arc pairs.
std::size_t self_intersection_count(const DiscreteCurve& c);

DiscreteCurve rotated(const DiscreteCurve& c, const Mat3& rotation);
/// Same trace traversed backwards, vertex 0 kept in place.
DiscreteCurve reversed(const DiscreteCurve& c);

// Sample curves used by tests, scenarios and the CLI.

/// Equator traversed `covers` times, N vertices, uniform.
DiscreteCurve great_circle(std::size_t n, int covers = 1);
/// Circle at polar angle theta about the z axis.
DiscreteCurve latitude_circle(double theta, std::size_t n);
/// Equator lifted to height amplitude (sin 2s + cos(3s)/2) and projected back.
DiscreteCurve wobbly_circle(double amplitude, std::size_t n);
/// Figure-eight: two circles of angular radius rho touching at (1,0,0), traversed in
/// opposite senses so that the tangent is continuous.
DiscreteCurve figure_eight(double rho, std::size_t n);

}  // namespace spherelab
