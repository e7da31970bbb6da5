#include "spherelab/elastica_catalog.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "spherelab/discrete_elastic.hpp"
#include "spherelab/error.hpp"
#include "spherelab/quaternion.hpp"

namespace spherelab {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 6>;

constexpr double kPi = std::numbers::pi;
constexpr double kOdeTol = 1e-12;
constexpr double kProfileMargin = 1e-6;

struct FrameSystem {
  ElasticaProfile prof;
  void operator()(const State& y, State& dy, double s) const {
    const Vec3 g{y[0], y[1], y[2]};
    const Vec3 t{y[3], y[4], y[5]};
    const Vec3 a = prof.curvature(s) * cross(g, t) - g;
    dy = {t.x, t.y, t.z, a.x, a.y, a.z};
  }
};

constexpr State kStartFrame{1.0, 0.0, 0.0, 0.0, 1.0, 0.0};

Vec3 point_of(const State& y) { return {y[0], y[1], y[2]}; }
Vec3 tangent_of(const State& y) { return {y[3], y[4], y[5]}; }

bool finite_state(const State& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

WaveIndex::WaveIndex(int m, int n) : m_(m), n_(n) {
  if (m <= 0 || n <= 0) throw Error(ErrorCode::RatioOutOfRange, "m and n must be positive");
  if (std::gcd(m, n) != 1)
    throw Error(ErrorCode::NotCoprime, std::to_string(m) + " and " + std::to_string(n) + " are not coprime");
  if (!(ratio() < kMaxWaveRatio))
    throw Error(ErrorCode::RatioOutOfRange,
                std::to_string(m) + "/" + std::to_string(n) + " is not below 2 - sqrt(2)");
}

double ElasticaProfile::curvature(double s) const { return k0 * jacobi_cn(r * s, Modulus(p)); }

double ElasticaProfile::curvature_second_derivative(double s) const {
  const double cn = jacobi_cn(r * s, Modulus(p));
  const double sn2 = 1.0 - cn * cn;
  return -k0 * r * r * cn * (1.0 - 2.0 * p * p * sn2);
}

double ElasticaProfile::stationary_residual(double s) const {
  const double k = curvature(s);
  return 2.0 * curvature_second_derivative(s) + k * k * k + k;
}

ElasticaProfile profile_from_modulus(Modulus p) {
  const double v = p.value();
  if (!(v > 0.0 && v < kElasticaModulusBound - kProfileMargin))
    throw Error(ErrorCode::ModulusOutOfRange, "elastica modulus must lie in (0, 1/sqrt(2) - 1e-6)");
  const double q = 1.0 - 2.0 * v * v;
  ElasticaProfile prof;
  prof.p = v;
  prof.k0 = std::sqrt(2.0 * v * v / q);
  prof.r = std::sqrt(1.0 / (2.0 * q));
  prof.period = 4.0 * complete_k(p) / prof.r;
  return prof;
}

Monodromy monodromy(Modulus p) {
  const ElasticaProfile prof = profile_from_modulus(p);
  State y = kStartFrame;
  try {
    odeint::integrate_adaptive(odeint::make_controlled(kOdeTol, kOdeTol, odeint::runge_kutta_dopri5<State>()),
                               FrameSystem{prof}, y, 0.0, prof.period, prof.period / 256.0);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::IntegratorFailure, std::string("frame integration failed: ") + e.what());
  }
  if (!finite_state(y)) throw Error(ErrorCode::IntegratorFailure, "frame integration produced non-finite values");

  const Vec3 g = point_of(y);
  const Vec3 t = tangent_of(y);
  Monodromy mono;
  mono.rotation = Mat3::from_columns(g, t, cross(g, t));
  mono.orthonormality_defect = std::max({std::abs(norm(g) - 1.0), std::abs(norm(t) - 1.0), std::abs(dot(g, t))});

  Quaternion q = quaternion_from_matrix(mono.rotation);
  if (q.w < 0.0) q = -q;
  const double s = norm(q.vec());
  double phi = 2.0 * std::atan2(s, q.w);  // in [0, pi]
  Vec3 axis = s > 0.0 ? q.vec() / s : Vec3{0.0, 0.0, 1.0};
  // The axis lies in span(e1, e3); orient it toward e1, falling back to e3 at p ~ 0.
  const bool flip = std::abs(axis.x) > 1e-9 ? axis.x < 0.0 : axis.z < 0.0;
  if (flip) {
    axis = -axis;
    phi = 2.0 * kPi - phi;
  }
  mono.axis = axis;
  mono.angle = 2.0 * kPi - phi;
  return mono;
}

double monodromy_angle(Modulus p) { return monodromy(p).angle; }

Modulus modulus_for_ratio(const WaveIndex& idx) {
  const double target = 2.0 * kPi * idx.ratio();
  double lo = 1e-8;
  double hi = kElasticaModulusBound - 2.0 * kProfileMargin;
  double mid = 0.5 * (lo + hi);
  // angle decreases in p
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = monodromy_angle(Modulus(mid)) - target;
    if (std::abs(f) < 1e-10) break;
    if (f > 0.0) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-16) break;
  }
  return Modulus(mid);
}

double energy_for_modulus(Modulus p, int n) {
  const double v = p.value();
  return 8.0 * n / std::sqrt(2.0 - 4.0 * v * v) * (2.0 * complete_e(p) - complete_k(p));
}

double energy_closed_form(const WaveIndex& idx) { return energy_for_modulus(modulus_for_ratio(idx), idx.n()); }

ClosedElastica synthesize(const WaveIndex& idx, std::size_t n_vertices) {
  if (n_vertices < 64 * static_cast<std::size_t>(idx.n()))
    throw Error(ErrorCode::TooFewVertices, "synthesis needs at least 64 vertices per lobe");
  const Modulus p = modulus_for_ratio(idx);
  const ElasticaProfile prof = profile_from_modulus(p);
  const double total = prof.period * idx.n();

  std::vector<double> times(n_vertices + 1);
  for (std::size_t j = 0; j <= n_vertices; ++j) times[j] = total * static_cast<double>(j) / n_vertices;
  times.back() = total;

  std::vector<Vec3> pts;
  pts.reserve(n_vertices + 1);
  State y = kStartFrame;
  try {
    odeint::integrate_times(odeint::make_dense_output(kOdeTol, kOdeTol, odeint::runge_kutta_dopri5<State>()),
                            FrameSystem{prof}, y, times.begin(), times.end(), prof.period / 256.0,
                            [&](const State& st, double) { pts.push_back(point_of(st)); });
  } catch (const std::exception& e) {
    throw Error(ErrorCode::IntegratorFailure, std::string("synthesis failed: ") + e.what());
  }
  if (pts.size() != n_vertices + 1 || !finite_state(y))
    throw Error(ErrorCode::IntegratorFailure, "synthesis produced an incomplete sample");

  const double gap = angle_between(pts.front(), pts.back());
  if (!(gap < 1e-6))
    throw Error(ErrorCode::InvalidCurve, "elastica failed to close, gap " + fmt(gap));
  pts.pop_back();

  ClosedElastica out{idx, prof, DiscreteCurve::from_points(pts), energy_for_modulus(p, idx.n()), 0.0, gap};
  out.energy_quadrature = elastic_energy(out.curve);
  return out;
}

std::vector<WaveIndex> admissible_indices(int n_max) {
  std::vector<WaveIndex> out;
  for (int n = 2; n <= n_max; ++n)
    for (int m = 1; m < n; ++m)
      if (std::gcd(m, n) == 1 && static_cast<double>(m) / n < kMaxWaveRatio) out.emplace_back(m, n);
  return out;
}

GapScanReport critical_gap_scan(int n_max) {
  if (n_max < 2) throw std::invalid_argument("critical_gap_scan needs n_max >= 2");
  const double bound = 8.0 * kPi / std::numbers::sqrt2;
  GapScanReport rep;
  rep.min_energy = std::numeric_limits<double>::infinity();
  for (const auto& idx : admissible_indices(n_max)) {
    const Modulus p = modulus_for_ratio(idx);
    const double e = energy_for_modulus(p, idx.n());
    rep.entries.push_back({idx, p.value(), e});
    rep.min_energy = std::min(rep.min_energy, e);
  }
  rep.all_above_gap = true;
  for (const auto& e : rep.entries) rep.all_above_gap = rep.all_above_gap && e.energy > bound;
  for (int k = 1; 2.0 * k * kPi <= bound; ++k)
    if (2.0 * k * kPi > 2.0 * kPi) rep.geodesic_values.push_back(2.0 * k * kPi);
  rep.pass = rep.all_above_gap && rep.geodesic_values.size() == 1 &&
             std::abs(rep.geodesic_values[0] - 4.0 * kPi) < 1e-12;
  return rep;
}

std::string catalog_to_csv(const std::vector<ClosedElastica>& rows) {
  std::string out = "m,n,p,energy_closed_form,energy_quadrature,closure_gap\n";
  for (const auto& r : rows) {
    out += std::to_string(r.index.m()) + ',' + std::to_string(r.index.n()) + ',' + fmt(r.profile.p) + ',' +
           fmt(r.energy_closed_form) + ',' + fmt(r.energy_quadrature) + ',' + fmt(r.closure_gap) + '\n';
  }
  return out;
}

void write_catalog_csv(const std::vector<ClosedElastica>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  out << catalog_to_csv(rows);
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace spherelab
