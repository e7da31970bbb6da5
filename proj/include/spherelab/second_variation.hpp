#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "spherelab/sphere_geom.hpp"

namespace spherelab {

/// Phi(t) = exp(-1/t^2 - 1/(2pi - t)^2) / exp(-2/pi^2): flat at 0 and 2 pi, positive
/// between, maximum 1 at pi.
double bump_value(double t);

struct BumpProfile {
  std::vector<double> samples;  // samples[j] = Phi(2 pi j / M), j = 0..M
  std::size_t intervals() const { return samples.size() - 1; }
};

BumpProfile bump_phi(std::size_t m = 1024);

/// phi1, phi2 sampled at the angles 2 pi j / M of the circle, j = 0..M-1. The double loop
/// E+E runs through phi1 on its first turn and phi2 on its second.
class NormalPerturbation {
 public:
  static constexpr std::size_t kMinSamples = 256;

  /// Throws MalformedPerturbation for M < 256, unequal sizes or non-finite samples.
  NormalPerturbation(std::vector<double> phi1, std::vector<double> phi2);

  const std::vector<double>& phi1() const { return phi1_; }
  const std::vector<double>& phi2() const { return phi2_; }
  std::size_t samples() const { return phi1_.size(); }
  /// phi1 followed by phi2: 2M samples over t in [0, 1).
  std::vector<double> concatenated() const;

  /// The concatenation is smooth on the double loop.
  bool compatible() const { return compatible_; }
  /// Each of phi1, phi2 is smooth on the circle by itself.
  bool smooth_closing() const { return smooth_closing_; }

 private:
  std::vector<double> phi1_;
  std::vector<double> phi2_;
  bool compatible_ = false;
  bool smooth_closing_ = false;
};

/// Smoothness test used for the flags: trigonometric-interpolant coefficients with
/// |freq| >= M/4 stay below 1e-8 (1 + max|f|).
bool spectrally_smooth(const std::vector<double>& f);

/// The bump pair (Phi, -Phi) at M samples per loop.
NormalPerturbation bump_pair(std::size_t m = 1024);

/// g + Phi A on the first loop and g + Phi B on the second, where g, A, B are random
/// trigonometric polynomials of degree 3 with N(0,1) coefficients. Always smooth_closing.
NormalPerturbation random_smooth_perturbation(std::uint64_t seed, std::size_t m = 1024);

/// 8 pi int_0^1 (z''/4pi + 4 pi z)(z''/4pi + 2 pi z) dt with z the primitive of the
/// concatenated profile, z(0) = 0. Throws MalformedPerturbation if not compatible.
double second_variation_form(const NormalPerturbation& pert);

/// The same integral split at t = 1/2. Throws NotSmoothlyClosing unless smooth_closing.
std::pair<double, double> split_form(const NormalPerturbation& pert);

/// Normal displacement w(s) = 4 pi z(s / 4pi), s in [0, 4pi), for which the form is the
/// second derivative of the elastic energy. Sampled at n points; needs a zero-mean profile
/// (otherwise w is not periodic) and throws MalformedPerturbation.
std::vector<double> variation_displacement(const NormalPerturbation& pert, std::size_t n);

/// E+E at n points (arclength 4 pi j / n on the equator) with vertex j moved by
/// eps * w[j] along N_E = e3 through the exponential map.
DiscreteCurve displaced_double_circle(const std::vector<double>& w, double eps);

inline constexpr double kDefaultEpsMax = 0.15;

/// gamma^eps: E+E displaced by eps (Phi, -Phi) N_E. Requires 0 < eps <= eps_max (else
/// EpsOutOfRange) and n >= 256 (else TooFewVertices).
DiscreteCurve perturbed_double_circle(double eps, std::size_t n, double eps_max = kDefaultEpsMax);

/// Bisection for eps with elastic_energy(gamma^eps) = 4 pi + delta / 2 to 1e-3 delta.
/// Throws EpsOutOfRange if the window is not reached below eps_max.
double eps_for_energy_window(double delta, std::size_t n, double eps_max = kDefaultEpsMax);

}  // namespace spherelab
