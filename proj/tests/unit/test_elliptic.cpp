#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "spherelab/elliptic.hpp"
#include "spherelab/error.hpp"

using namespace spherelab;

namespace {
constexpr double kPi = std::numbers::pi;
using boost::math::quadrature::gauss_kronrod;

double k_quad(double p) {
  return gauss_kronrod<double, 61>::integrate(
      [p](double t) { return 1.0 / std::sqrt(1.0 - p * p * std::sin(t) * std::sin(t)); }, 0.0, kPi / 2.0, 15, 1e-14);
}
double e_quad(double p) {
  return gauss_kronrod<double, 61>::integrate(
      [p](double t) { return std::sqrt(1.0 - p * p * std::sin(t) * std::sin(t)); }, 0.0, kPi / 2.0, 15, 1e-14);
}
}  // namespace

TEST(Elliptic, ValuesAtZero) {
  EXPECT_DOUBLE_EQ(complete_k(Modulus(0.0)), kPi / 2.0);
  EXPECT_DOUBLE_EQ(complete_e(Modulus(0.0)), kPi / 2.0);
  EXPECT_NEAR(f_of_p(Modulus(0.0)), kPi / 2.0, 1e-12);
}

TEST(Elliptic, AgreesWithQuadrature) {
  for (double p : {0.1, 0.5, 0.7, 0.9}) {
    EXPECT_NEAR(complete_k(Modulus(p)), k_quad(p), 1e-10) << p;
    EXPECT_NEAR(complete_e(Modulus(p)), e_quad(p), 1e-10) << p;
  }
  const double p = 0.5;
  EXPECT_NEAR(f_of_p(Modulus(p)), (2.0 * e_quad(p) - k_quad(p)) / std::sqrt(1.0 - 2.0 * p * p), 1e-10);
}

TEST(Elliptic, NearOneLimit) {
  // E ~ 1 + (k'^2 / 2)(ln(4 / k') - 1/2)
  const double p = 0.999999;
  const double kc = std::sqrt(1.0 - p * p);
  EXPECT_NEAR(complete_e(Modulus(p)), 1.0 + 0.5 * kc * kc * (std::log(4.0 / kc) - 0.5), 1e-10);
}

TEST(Elliptic, LegendreRelation) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 20; ++i) {
    const Modulus p(u(rng));
    const Modulus q(p.complement());
    const double lhs = complete_e(p) * complete_k(q) + complete_e(q) * complete_k(p) - complete_k(p) * complete_k(q);
    EXPECT_NEAR(lhs, kPi / 2.0, 1e-10);
  }
}

TEST(Elliptic, ModulusRange) {
  EXPECT_THROW(Modulus(1.0), Error);
  EXPECT_THROW(Modulus(-0.1), Error);
  try {
    f_of_p(Modulus(kElasticaModulusBound - 1e-10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModulusOutOfRange);
  }
}

TEST(JacobiCn, SpecialValues) {
  for (double p : {0.0, 0.3, 0.7, 0.95}) {
    EXPECT_NEAR(jacobi_cn(0.0, Modulus(p)), 1.0, 1e-15);
    EXPECT_NEAR(jacobi_cn(complete_k(Modulus(p)), Modulus(p)), 0.0, 1e-10);
    EXPECT_NEAR(jacobi_cn(4.0 * complete_k(Modulus(p)) + 0.4, Modulus(p)), jacobi_cn(0.4, Modulus(p)), 1e-10);
  }
  for (double u : {0.3, 1.1, 2.7}) EXPECT_NEAR(jacobi_cn(u, Modulus(0.0)), std::cos(u), 1e-12);
}

TEST(JacobiCn, DifferentialIdentity) {
  const double p = 0.6;
  const Modulus m(p);
  const double h = 1e-5;
  for (double u = -3.0; u < 8.0; u += 0.37) {
    const double c = jacobi_cn(u, m);
    const double d = (jacobi_cn(u + h, m) - jacobi_cn(u - h, m)) / (2.0 * h);
    EXPECT_NEAR(d * d, (1.0 - c * c) * (1.0 - p * p + p * p * c * c), 1e-8);
  }
}

TEST(FOfP, StrictlyIncreasingOnGrid) {
  double prev = f_of_p(Modulus(0.0));
  for (int i = 1; i <= 70; ++i) {
    const double f = f_of_p(Modulus(0.01 * i));
    EXPECT_GT(f, prev) << i;
    prev = f;
  }
}
