#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spherelab/discrete_elastic.hpp"
#include "spherelab/elastica_catalog.hpp"
#include "spherelab/second_variation.hpp"

using namespace spherelab;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

DiscreteCurve bumpy_latitude(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.02);
  double a[4], b[4];
  for (int k = 0; k < 4; ++k) {
    a[k] = g(rng);
    b[k] = g(rng);
  }
  std::vector<Vec3> pts;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 2.0 * kPi * j / n;
    double th = 1.0;
    for (int k = 0; k < 4; ++k) th += a[k] * std::cos((k + 1) * s) + b[k] * std::sin((k + 1) * s);
    pts.push_back({std::sin(th) * std::cos(s), std::sin(th) * std::sin(s), std::cos(th)});
  }
  return DiscreteCurve::from_points(pts);
}
}  // namespace

TEST(GeodesicCurvature, GreatAndLatitudeCircles) {
  EXPECT_LT(max_abs(geodesic_curvature(great_circle(256)).values), 1e-6);
  for (double th : {0.5, 1.0, 1.3}) {
    const auto k = geodesic_curvature(latitude_circle(th, 256)).values;
    for (double v : k) EXPECT_NEAR(v, 1.0 / std::tan(th), 1e-3);
  }
}

TEST(GeodesicCurvature, OrientationFlipNegates) {
  const auto c = bumpy_latitude(5, 256);
  const auto k = geodesic_curvature(c).values;
  const auto kr = geodesic_curvature(reversed(c)).values;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(kr[i], -k[(n - i) % n], 1e-10);
  EXPECT_NEAR(elastic_energy(reversed(c)), elastic_energy(c), 1e-10);
}

TEST(GeodesicCurvature, MatchesElasticaProfile) {
  const auto e = synthesize(WaveIndex(1, 2), 2048);
  const auto k = geodesic_curvature(e.curve).values;
  const double ds = e.profile.period * 2.0 / 2048.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) worst = std::max(worst, std::abs(k[i] - e.profile.curvature(ds * i)));
  EXPECT_LT(worst, 1e-3);
}

TEST(ElasticEnergy, CoveredCircles) {
  EXPECT_NEAR(elastic_energy(great_circle(256)), 2.0 * kPi, 1e-4);
  EXPECT_NEAR(elastic_energy(great_circle(512, 2)), 4.0 * kPi, 1e-4);
  const double th = 0.9;
  const double cot = 1.0 / std::tan(th);
  EXPECT_NEAR(elastic_energy(latitude_circle(th, 512)), 2.0 * kPi * std::sin(th) * (1.0 + cot * cot), 1e-3);
}

TEST(ElasticEnergy, RotationInvariantAndAboveLength) {
  const auto c = bumpy_latitude(9, 300);
  const auto r = rotated(c, rotation_about(Vec3{0.0, 0.6, 0.8}, 1.1));
  EXPECT_NEAR(elastic_energy(r), elastic_energy(c), 1e-12);
  EXPECT_GE(elastic_energy(c), curve_length(c));
  EXPECT_GE(elastic_energy(c), 2.0 * kPi);
}

TEST(ElasticEnergy, ElasticaQuadratureMatchesClosedForm) {
  const auto e = synthesize(WaveIndex(1, 2), 2048);
  EXPECT_LT(std::abs(elastic_energy(e.curve) - e.energy_closed_form) / e.energy_closed_form, 1e-4);
}

TEST(FlowVelocity, VanishesAtCriticalPoints) {
  EXPECT_LT(sup_norm(flow_velocity(great_circle(256))), 1e-6);
  EXPECT_LT(sup_norm(flow_velocity(great_circle(512, 2))), 1e-6);
  EXPECT_LT(sup_norm(flow_velocity(synthesize(WaveIndex(1, 2), 1024).curve)), 1e-3);
}

TEST(FlowVelocity, TangentToSphereAndNormalToCurve) {
  const auto c = bumpy_latitude(2, 256);
  const auto v = flow_velocity(c);
  const auto geo = vertex_geometry(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(dot(v.vectors[i], c[i].vec()), 0.0, 1e-10);
    EXPECT_NEAR(dot(v.vectors[i], geo[i].tangent), 0.0, 1e-8);
  }
  EXPECT_GT(sup_norm(v), 1e-3);
}

TEST(FlowVelocity, LatitudeCircleValue) {
  // k constant: velocity magnitude k^3 + k along the normal.
  const double th = 1.1;
  const double k = 1.0 / std::tan(th);
  const auto v = flow_velocity(latitude_circle(th, 256));
  for (const auto& w : v.vectors) EXPECT_NEAR(norm(w), k * k * k + k, 1e-3);
}

TEST(FlowVelocity, RotationEquivariant) {
  const auto c = bumpy_latitude(4, 256);
  const Mat3 r = rotation_about(Vec3{1.0, 0.0, 0.0}, 0.9);
  const auto v = flow_velocity(c);
  const auto vr = flow_velocity(rotated(c, r));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_LT(norm(vr.vectors[i] - r * v.vectors[i]), 1e-8);
}

TEST(FlowVelocity, NeedsThirtyTwoVertices) {
  try {
    flow_velocity(great_circle(16));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewVertices);
  }
}

TEST(GradientConsistency, EnergyDecreasesAlongVelocity) {
  const auto ge = perturbed_double_circle(0.05, 512);
  const auto r1 = gradient_consistency_check(ge, flow_velocity(ge), 1e-5);
  EXPECT_FALSE(r1.near_critical);
  EXPECT_LT(r1.defect, 5e-2);
  EXPECT_LT(r1.energy_rate, 0.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto c = bumpy_latitude(seed, 512);
    const auto r = gradient_consistency_check(c, flow_velocity(c), 1e-5);
    EXPECT_LT(r.defect, 5e-2) << seed;
  }
}

TEST(GradientConsistency, NearCriticalFlag) {
  const auto e = synthesize(WaveIndex(1, 2), 1024).curve;
  EXPECT_TRUE(gradient_consistency_check(e, flow_velocity(e), 1e-4).near_critical);
  EXPECT_THROW(gradient_consistency_check(e, flow_velocity(e), 1e-2), std::invalid_argument);
}
