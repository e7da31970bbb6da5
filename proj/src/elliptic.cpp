#include "spherelab/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "spherelab/error.hpp"

namespace spherelab {

namespace {

constexpr int kMaxAgmSteps = 40;

struct AgmSequence {
  std::array<double, kMaxAgmSteps + 1> a{}, c{};
  int steps = 0;  // a[steps], c[steps] are the last terms
};

AgmSequence agm(double p) {
  AgmSequence s;
  double a = 1.0, b = std::sqrt((1.0 - p) * (1.0 + p));
  s.a[0] = a;
  s.c[0] = p;
  while (s.steps < kMaxAgmSteps && std::abs(s.c[static_cast<std::size_t>(s.steps)]) > 1e-17 * a) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    ++s.steps;
    s.a[static_cast<std::size_t>(s.steps)] = a;
    s.c[static_cast<std::size_t>(s.steps)] = cn;
  }
  return s;
}

}  // namespace

Modulus::Modulus(double p) : p_(p) {
  if (!(p >= 0.0 && p < 1.0))
    throw Error(ErrorCode::ModulusOutOfRange, "modulus must lie in [0, 1), got " + std::to_string(p));
}

double Modulus::complement() const { return std::sqrt((1.0 - p_) * (1.0 + p_)); }

double complete_k(Modulus p) {
  const auto s = agm(p.value());
  return std::numbers::pi / (2.0 * s.a[static_cast<std::size_t>(s.steps)]);
}

double complete_e(Modulus p) {
  const auto s = agm(p.value());
  double sum = 0.5 * s.c[0] * s.c[0];
  double pow2 = 1.0;
  for (int n = 1; n <= s.steps; ++n) {
    sum += pow2 * s.c[static_cast<std::size_t>(n)] * s.c[static_cast<std::size_t>(n)];
    pow2 *= 2.0;
  }
  return std::numbers::pi / (2.0 * s.a[static_cast<std::size_t>(s.steps)]) * (1.0 - sum);
}

double jacobi_cn(double u, Modulus p) {
  const auto s = agm(p.value());
  const int n = s.steps;
  double phi = std::ldexp(s.a[static_cast<std::size_t>(n)] * u, n);
  for (int j = n; j >= 1; --j) {
    const auto jj = static_cast<std::size_t>(j);
    phi = 0.5 * (phi + std::asin(s.c[jj] / s.a[jj] * std::sin(phi)));
  }
  return std::cos(phi);
}

double f_of_p(Modulus p) {
  const double v = p.value();
  if (!(v < kElasticaModulusBound - 1e-9))
    throw Error(ErrorCode::ModulusOutOfRange, "f(p) needs p < 1/sqrt(2) - 1e-9, got " + std::to_string(v));
  return (2.0 * complete_e(p) - complete_k(p)) / std::sqrt(1.0 - 2.0 * v * v);
}

}  // namespace spherelab
