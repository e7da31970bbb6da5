#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "spherelab/elliptic.hpp"
#include "spherelab/sphere_geom.hpp"
#include "spherelab/vec3.hpp"

namespace spherelab {

/// (m, n): n lobes, m trips around the equator. Coprime with 0 < m/n < 2 - sqrt(2).
class WaveIndex {
 public:
  /// Throws NotCoprime or RatioOutOfRange.
  WaveIndex(int m, int n);
  int m() const { return m_; }
  int n() const { return n_; }
  double ratio() const { return static_cast<double>(m_) / n_; }

 private:
  int m_;
  int n_;
};

inline constexpr double kMaxWaveRatio = 0.58578643762690495119;  // 2 - sqrt(2)

/// Curvature k(s) = k0 cn(r s, p) with k0^2 = 2p^2/(1-2p^2), r^2 = 1/(2(1-2p^2)).
struct ElasticaProfile {
  double p = 0.0;
  double k0 = 0.0;
  double r = 0.0;
  double period = 0.0;  // 4 K(p) / r

  double curvature(double s) const;
  /// Exact k''(s) = -k0 r^2 cn (1 - 2 p^2 sn^2).
  double curvature_second_derivative(double s) const;
  /// 2k'' + k^3 + k at s.
  double stationary_residual(double s) const;
};

/// Requires 0 < p < 1/sqrt(2) - 1e-6; throws ModulusOutOfRange.
ElasticaProfile profile_from_modulus(Modulus p);

struct Monodromy {
  Mat3 rotation;                    // frame at s = period expressed in the frame at s = 0
  Vec3 axis;                        // unit, oriented toward the starting point
  double angle = 0.0;               // delta theta in (0, 2 pi)
  double orthonormality_defect = 0.0;
};

/// Integrates gamma' = T, T' = k (gamma x T) - gamma over one curvature period from the
/// frame (e1, e2, e3). Throws IntegratorFailure.
Monodromy monodromy(Modulus p);
double monodromy_angle(Modulus p);

/// Bisection on monodromy_angle(p) = 2 pi m / n.
Modulus modulus_for_ratio(const WaveIndex& idx);

struct ClosedElastica {
  WaveIndex index;
  ElasticaProfile profile;
  DiscreteCurve curve;
  double energy_closed_form = 0.0;
  double energy_quadrature = 0.0;   // discrete elastic energy of `curve`
  double closure_gap = 0.0;         // geodesic distance between the start and the end of the integration
};

/// Integrates n curvature periods and samples N points uniformly in arclength. Requires
/// N >= 64 n; throws InvalidCurve if the curve fails to close to 1e-6.
ClosedElastica synthesize(const WaveIndex& idx, std::size_t n_vertices);

/// 8 n / sqrt(2 - 4p^2) (2E(p) - K(p)).
double energy_for_modulus(Modulus p, int n);
double energy_closed_form(const WaveIndex& idx);

/// All admissible (m, n) with 2 <= n <= n_max, ordered by n then m.
std::vector<WaveIndex> admissible_indices(int n_max);

struct GapScanEntry {
  WaveIndex index;
  double p;
  double energy;
};

struct GapScanReport {
  std::vector<GapScanEntry> entries;
  double min_energy = 0.0;
  std::vector<double> geodesic_values;  // 2 k pi inside (2 pi, 8 pi / sqrt(2)]
  bool all_above_gap = false;           // every entry > 8 pi / sqrt(2)
  bool pass = false;
};

/// Throws std::invalid_argument for n_max < 2.
GapScanReport critical_gap_scan(int n_max);

/// Header m,n,p,energy_closed_form,energy_quadrature,closure_gap.
std::string catalog_to_csv(const std::vector<ClosedElastica>& rows);
void write_catalog_csv(const std::vector<ClosedElastica>& rows, const std::filesystem::path& path);

}  // namespace spherelab
