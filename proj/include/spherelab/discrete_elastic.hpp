#pragma once

#include <vector>

#include "spherelab/sphere_geom.hpp"

namespace spherelab {

/// Signed geodesic curvature per vertex, positive toward normal = point x tangent.
struct CurvatureField {
  std::vector<double> values;
};

/// Per-vertex vectors tangent to S^2 and normal to the curve.
struct VelocityField {
  std::vector<Vec3> vectors;
};

/// Local discrete differential geometry at each vertex.
struct VertexGeometry {
  double len_prev = 0.0;   // geodesic length of the incoming arc
  double len_next = 0.0;   // geodesic length of the outgoing arc
  double dual = 0.0;       // (len_prev + len_next) / 2, the quadrature weight
  double turning = 0.0;    // signed angle between incoming and outgoing arc directions
  double curvature = 0.0;  // turning / dual
  Vec3 tangent;            // unit, bisects the two arc directions
  Vec3 normal;             // point x tangent
};

std::vector<VertexGeometry> vertex_geometry(const DiscreteCurve& c);

/// Turning angle of the parallel-transported arc directions divided by the dual length.
CurvatureField geodesic_curvature(const DiscreteCurve& c);

/// Quadrature of 1 + k^2 against the dual arclength weights.
double elastic_energy(const DiscreteCurve& c);

/// -(2 k'' + k^3 + k) N with k'' from three-point differences on the non-uniform grid.
VelocityField flow_velocity(const DiscreteCurve& c);

/// Discrete L2 inner product <v, v> = sum |v_i|^2 dual_i.
double l2_norm_sq(const DiscreteCurve& c, const VelocityField& v);
double sup_norm(const VelocityField& v);

/// Moves every vertex by exp_map(vertex, t * v_i).
DiscreteCurve displaced(const DiscreteCurve& c, const VelocityField& v, double t);

struct GradientCheck {
  bool near_critical = false;  // <v, v> below 1e-6: no ratio is formed
  double defect = 0.0;         // |dE/dt + <v,v>| / <v,v>
  double energy_rate = 0.0;    // centered difference dE/dt at t = 0
  double field_norm_sq = 0.0;
};

/// Compares the centered difference of the energy along t * field with -<field, field>.
/// h must lie in [1e-6, 1e-3].
GradientCheck gradient_consistency_check(const DiscreteCurve& c, const VelocityField& field, double h);

}  // namespace spherelab
