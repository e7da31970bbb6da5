#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "spherelab/quaternion.hpp"
#include "spherelab/sphere_geom.hpp"

namespace spherelab {

/// Hopf map S^3 -> S^2, q |-> q i q*. Fibers are the circles q e^{i theta}.
UnitVec3 hopf_projection(const Quaternion& q);

/// Periodic N_s x N_f grid on S^3; row u follows the base curve, column v the fiber.
/// Stored per component with one ghost column on each side of every row.
class HopfTorusSample {
 public:
  HopfTorusSample(std::size_t ns, std::size_t nf);

  std::size_t ns() const { return ns_; }
  std::size_t nf() const { return nf_; }
  Quaternion at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Quaternion& q);
  /// Component k of row i, including the ghosts: nf + 2 values.
  const double* row(std::size_t i, int k) const { return &comp_[k][i * (nf_ + 2)]; }
  /// Refreshes the ghost columns after set().
  void close_rows();

 private:
  std::size_t ns_;
  std::size_t nf_;
  std::array<std::vector<double>, 4> comp_;
};

/// Horizontal lift of the base curve, phase-corrected to close, swept by N_f fiber samples
/// starting at fiber angle `phase`. One grid row per base vertex. Requires N_f >= 32;
/// throws LiftDrift if a sample projects farther than 1e-5 from its base point.
HopfTorusSample lift_curve(const DiscreteCurve& c, std::size_t nf, double phase = 0.0);

/// Quadrature of 1 + H^2/4 over the torus, H from the 9-point local quadratic stencil.
/// Requires N_s, N_f >= 64; throws DegenerateGrid.
double willmore_energy(const HopfTorusSample& t);

struct ThresholdReport {
  double willmore = 0.0;
  double base_energy = 0.0;
  double pi_factor_defect = 0.0;     // |Will - pi Wil| / Will
  bool below_4pi2 = false;
  bool below_8pi2_over_sqrt2 = false;
  bool below_li_yau = false;         // Will < 8 pi
  bool base_below_4pi = false;
  bool base_below_8pi_over_sqrt2 = false;
};

/// Resamples the base curve to N_s vertices, lifts with N_f fiber samples and compares.
ThresholdReport threshold_report(const DiscreteCurve& c, std::size_t ns = 256, std::size_t nf = 64);

/// Stereographic projection from the unit `pole` onto the 3-space orthogonal to it.
std::array<double, 3> stereographic(const Quaternion& x, const Quaternion& pole);

/// Quad mesh in Wavefront OBJ format. Throws DegenerateGrid if a sample sits at the pole.
std::string torus_to_obj(const HopfTorusSample& t, const Quaternion& pole);
void write_torus_obj(const HopfTorusSample& t, const Quaternion& pole, const std::filesystem::path& path);

}  // namespace spherelab
