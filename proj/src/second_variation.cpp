#include "spherelab/second_variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "spherelab/discrete_elastic.hpp"
#include "spherelab/error.hpp"
#include "spherelab/spectral.hpp"

namespace spherelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kNyquistTol = 1e-8;

// Primitive with zero at t = 0 of a 1-periodic sampled profile: c t plus the periodic part.
struct Primitive {
  std::vector<double> z;   // z(t_j), j = 0..n-1
  double end = 0.0;        // z(1)
  double mean = 0.0;
};

Primitive spectral_primitive(const std::vector<double>& f) {
  const std::size_t n = f.size();
  Fft fft(n);
  auto c = fft.forward_real(f);
  Primitive p;
  p.mean = c[0].real() / static_cast<double>(n);
  c[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (n % 2 == 0 && k == n / 2) {
      c[k] = 0.0;
      continue;
    }
    c[k] /= Complex(0.0, kTwoPi * signed_frequency(k, n));
  }
  auto periodic = fft.backward_real(c);
  const double z0 = periodic[0];
  p.z.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    p.z[j] = p.mean * static_cast<double>(j) / static_cast<double>(n) + periodic[j] - z0;
  p.end = p.mean;
  return p;
}

// Integrand samples at t_j for j = 0..n, the last one at t = 1.
std::vector<double> form_integrand(const NormalPerturbation& pert) {
  const auto phi = pert.concatenated();
  const auto prim = spectral_primitive(phi);
  const auto dphi = spectral_derivative(phi, 1.0, 1);  // z''
  const std::size_t n = phi.size();
  std::vector<double> out(n + 1);
  auto term = [](double zpp, double z) {
    const double a = zpp / (4.0 * kPi);
    return 8.0 * kPi * (a + 4.0 * kPi * z) * (a + 2.0 * kPi * z);
  };
  for (std::size_t j = 0; j < n; ++j) out[j] = term(dphi[j], prim.z[j]);
  out[n] = term(dphi[0], prim.end);
  return out;
}

double trapezoid(const std::vector<double>& f, std::size_t from, std::size_t to, double h) {
  double s = 0.5 * (f[from] + f[to]);
  for (std::size_t j = from + 1; j < to; ++j) s += f[j];
  return s * h;
}

std::vector<double> trig_poly(std::mt19937_64& rng, std::size_t m) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double a[4];
  double b[4];
  for (int j = 0; j < 4; ++j) {
    a[j] = gauss(rng);
    b[j] = gauss(rng);
  }
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    double v = a[0];
    for (int j = 1; j < 4; ++j) v += a[j] * std::cos(j * th) + b[j] * std::sin(j * th);
    out[i] = v;
  }
  return out;
}

}  // namespace

double bump_value(double t) {
  if (!(t > 0.0 && t < kTwoPi)) return 0.0;
  const double u = kTwoPi - t;
  return std::exp(-1.0 / (t * t) - 1.0 / (u * u) + 2.0 / (kPi * kPi));
}

BumpProfile bump_phi(std::size_t m) {
  BumpProfile b;
  b.samples.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) b.samples[j] = bump_value(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
  b.samples[m] = 0.0;
  return b;
}

bool spectrally_smooth(const std::vector<double>& f) {
  double amp = 0.0;
  for (double v : f) amp = std::max(amp, std::abs(v));
  return spectral_tail(f) <= kNyquistTol * (1.0 + amp);
}

NormalPerturbation::NormalPerturbation(std::vector<double> phi1, std::vector<double> phi2)
    : phi1_(std::move(phi1)), phi2_(std::move(phi2)) {
  if (phi1_.size() < kMinSamples || phi1_.size() != phi2_.size())
    throw Error(ErrorCode::MalformedPerturbation, "profiles need equal sizes of at least 256 samples");
  for (const auto* f : {&phi1_, &phi2_})
    for (double v : *f)
      if (!std::isfinite(v)) throw Error(ErrorCode::MalformedPerturbation, "non-finite profile sample");
  smooth_closing_ = spectrally_smooth(phi1_) && spectrally_smooth(phi2_);
  compatible_ = spectrally_smooth(concatenated());
}

std::vector<double> NormalPerturbation::concatenated() const {
  std::vector<double> out(phi1_);
  out.insert(out.end(), phi2_.begin(), phi2_.end());
  return out;
}

NormalPerturbation bump_pair(std::size_t m) {
  auto b = bump_phi(m).samples;
  b.pop_back();
  std::vector<double> neg(b.size());
  std::transform(b.begin(), b.end(), neg.begin(), [](double v) { return -v; });
  return NormalPerturbation(std::move(b), std::move(neg));
}

NormalPerturbation random_smooth_perturbation(std::uint64_t seed, std::size_t m) {
  std::mt19937_64 rng(seed);
  const auto g = trig_poly(rng, m);
  const auto a = trig_poly(rng, m);
  const auto b = trig_poly(rng, m);
  std::vector<double> phi1(m), phi2(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double bump = bump_value(kTwoPi * static_cast<double>(i) / static_cast<double>(m));
    phi1[i] = g[i] + bump * a[i];
    phi2[i] = g[i] + bump * b[i];
  }
  return NormalPerturbation(std::move(phi1), std::move(phi2));
}

double second_variation_form(const NormalPerturbation& pert) {
  if (!pert.compatible())
    throw Error(ErrorCode::MalformedPerturbation, "profile is not smooth along the double loop");
  const auto f = form_integrand(pert);
  const std::size_t n = f.size() - 1;
  return trapezoid(f, 0, n, 1.0 / static_cast<double>(n));
}

std::pair<double, double> split_form(const NormalPerturbation& pert) {
  if (!pert.smooth_closing())
    throw Error(ErrorCode::NotSmoothlyClosing, "phi1 or phi2 does not close smoothly at the basepoint");
  const auto f = form_integrand(pert);
  const std::size_t n = f.size() - 1;
  const double h = 1.0 / static_cast<double>(n);
  return {trapezoid(f, 0, n / 2, h), trapezoid(f, n / 2, n, h)};
}

std::vector<double> variation_displacement(const NormalPerturbation& pert, std::size_t n) {
  const auto phi = pert.concatenated();
  const auto prim = spectral_primitive(phi);
  double amp = 0.0;
  for (double v : phi) amp = std::max(amp, std::abs(v));
  if (std::abs(prim.mean) > 1e-12 * (1.0 + amp))
    throw Error(ErrorCode::MalformedPerturbation, "profile with nonzero mean has no periodic primitive");
  // trigonometric interpolation of z onto n points
  const std::size_t m = phi.size();
  Fft fm(m);
  const auto c = fm.forward_real(prim.z);
  std::vector<Complex> d(n, Complex(0.0, 0.0));
  const std::size_t keep = std::min(m, n) / 2;
  for (std::size_t k = 0; k < keep; ++k) {
    d[k] = c[k];
    if (k > 0) d[n - k] = c[m - k];
  }
  Fft fn(n);
  auto w = fn.backward_real(d);
  const double scale = 4.0 * kPi * static_cast<double>(n) / static_cast<double>(m);
  for (double& v : w) v *= scale;
  return w;
}

DiscreteCurve displaced_double_circle(const std::vector<double>& w, double eps) {
  const std::size_t n = w.size();
  const Vec3 normal{0.0, 0.0, 1.0};
  std::vector<UnitVec3> pts;
  pts.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 2.0 * kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    const UnitVec3 base(std::cos(s), std::sin(s), 0.0);
    pts.push_back(exp_map(base, eps * w[j] * normal));
  }
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve perturbed_double_circle(double eps, std::size_t n, double eps_max) {
  if (!(eps > 0.0 && eps <= eps_max))
    throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, " + std::to_string(eps_max) + "]");
  if (n < 256) throw Error(ErrorCode::TooFewVertices, "gamma^eps needs at least 256 vertices");
  std::vector<double> phi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 2.0 * kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    phi[j] = s < kTwoPi ? bump_value(s) : -bump_value(s - kTwoPi);
  }
  return displaced_double_circle(phi, eps);
}

double eps_for_energy_window(double delta, std::size_t n, double eps_max) {
  if (!(delta > 0.0)) throw Error(ErrorCode::EpsOutOfRange, "delta must be positive");
  const double target = 4.0 * kPi + 0.5 * delta;
  auto excess = [&](double eps) { return elastic_energy(perturbed_double_circle(eps, n, eps_max)) - target; };
  double lo = 0.0;
  double hi = eps_max;
  if (excess(hi) < 0.0) throw Error(ErrorCode::EpsOutOfRange, "energy window not reached below eps_max");
  double mid = hi;
  for (int it = 0; it < 100; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = excess(mid);
    if (std::abs(f) < 1e-3 * delta) break;
    if (f > 0.0) hi = mid;
    else lo = mid;
  }
  return mid;
}

}  // namespace spherelab
