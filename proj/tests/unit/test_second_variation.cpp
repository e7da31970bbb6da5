#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "spherelab/discrete_elastic.hpp"
#include "spherelab/error.hpp"
#include "spherelab/second_variation.hpp"

using namespace spherelab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Bump, FlatEndsPositiveInterior) {
  const auto b = bump_phi(1024);
  const auto& f = b.samples;
  EXPECT_EQ(f.front(), 0.0);
  EXPECT_EQ(f.back(), 0.0);
  EXPECT_NEAR(bump_value(kPi), 1.0, 1e-15);
  // exp(-1/t^2) underflows near the ends, so positivity is checked away from them
  for (std::size_t j = 1; j + 1 < f.size(); ++j) {
    EXPECT_GE(f[j], 0.0);
    const double t = 2.0 * kPi * static_cast<double>(j) / 1024.0;
    if (t > 0.1 && t < 2.0 * kPi - 0.1) {
      EXPECT_GT(f[j], 0.0) << j;
    }
  }
  // one-sided differences up to order 4 at both ends
  const double h = 2.0 * kPi / 1024.0;
  const std::size_t m = f.size() - 1;
  double d[5] = {f[0], (f[1] - f[0]) / h, (f[2] - 2 * f[1] + f[0]) / (h * h),
                 (f[3] - 3 * f[2] + 3 * f[1] - f[0]) / (h * h * h),
                 (f[4] - 4 * f[3] + 6 * f[2] - 4 * f[1] + f[0]) / (h * h * h * h)};
  for (double v : d) EXPECT_LT(std::abs(v), 1e-8);
  double e[5] = {f[m], (f[m] - f[m - 1]) / h, (f[m] - 2 * f[m - 1] + f[m - 2]) / (h * h),
                 (f[m] - 3 * f[m - 1] + 3 * f[m - 2] - f[m - 3]) / (h * h * h),
                 (f[m] - 4 * f[m - 1] + 6 * f[m - 2] - 4 * f[m - 3] + f[m - 4]) / (h * h * h * h)};
  for (double v : e) EXPECT_LT(std::abs(v), 1e-8);
}

TEST(Perturbation, Validation) {
  EXPECT_THROW(NormalPerturbation(std::vector<double>(100, 0.0), std::vector<double>(100, 0.0)), Error);
  EXPECT_THROW(NormalPerturbation(std::vector<double>(256, 0.0), std::vector<double>(512, 0.0)), Error);
  std::vector<double> bad(256, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(NormalPerturbation(bad, std::vector<double>(256, 0.0)), Error);
}

TEST(Form, ZeroField) {
  const NormalPerturbation z(std::vector<double>(256, 0.0), std::vector<double>(256, 0.0));
  EXPECT_EQ(second_variation_form(z), 0.0);
}

TEST(Form, BumpPairPositiveAndSplits) {
  const auto b = bump_pair();
  EXPECT_TRUE(b.smooth_closing());
  const double q = second_variation_form(b);
  const auto [a, c] = split_form(b);
  EXPECT_GT(q, 0.0);
  EXPECT_GT(a, 0.0);
  EXPECT_GT(c, 0.0);
  EXPECT_LE(std::abs(a + c - q), 1e-8 * q);
}

TEST(Form, OneSidedBump) {
  auto phi = bump_phi(1024).samples;
  phi.pop_back();
  const NormalPerturbation p(std::vector<double>(1024, 0.0), phi);
  const auto [a, c] = split_form(p);
  EXPECT_NEAR(a, 0.0, 1e-12);
  EXPECT_GT(c, 0.0);
}

TEST(Form, NonnegativeOnRandomSmoothPerturbations) {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const auto p = random_smooth_perturbation(seed, 512);
    ASSERT_TRUE(p.smooth_closing());
    const double q = second_variation_form(p);
    EXPECT_GE(q, -1e-8) << seed;
    const auto [a, c] = split_form(p);
    EXPECT_GE(a, -1e-8);
    EXPECT_GE(c, -1e-8);
    EXPECT_LE(std::abs(a + c - q), 1e-8 * std::abs(q));
  }
}

TEST(Form, NonClosingProfileRejectedBySplit) {
  std::vector<double> s1(256), s2(256);
  for (int i = 0; i < 256; ++i) {
    const double t = 2.0 * kPi * i / 256;
    s1[i] = std::sin(t / 2.0);
    s2[i] = -std::sin(t / 2.0);
  }
  const NormalPerturbation p(s1, s2);
  EXPECT_TRUE(p.compatible());
  EXPECT_FALSE(p.smooth_closing());
  EXPECT_NO_THROW(second_variation_form(p));
  try {
    split_form(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSmoothlyClosing);
  }
  const NormalPerturbation jump(s1, s1);
  EXPECT_FALSE(jump.compatible());
  EXPECT_THROW(second_variation_form(jump), Error);
}

TEST(Form, MatchesSecondDifferenceOfEnergy) {
  const auto b = bump_pair();
  const auto w = variation_displacement(b, 1024);
  const double h = 1e-2;
  const double fd = (elastic_energy(displaced_double_circle(w, h)) - 2.0 * elastic_energy(displaced_double_circle(w, 0.0)) +
                     elastic_energy(displaced_double_circle(w, -h))) /
                    (h * h);
  const double q = second_variation_form(b);
  EXPECT_LT(std::abs(fd - q) / q, 0.05);
}

TEST(GammaEps, EnergySandwichAndIntersection) {
  double prev = 4.0 * kPi;
  for (int i = 1; i <= 10; ++i) {
    const double e = elastic_energy(perturbed_double_circle(0.01 * i, 512));
    EXPECT_GT(e, prev);
    EXPECT_LT(e, 13.0);
    prev = e;
  }
  EXPECT_EQ(self_intersection_count(perturbed_double_circle(0.05, 512)), 1u);
}

TEST(GammaEps, Validation) {
  for (double eps : {0.0, -0.1, 0.2}) {
    try {
      perturbed_double_circle(eps, 512);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::EpsOutOfRange);
    }
  }
  EXPECT_THROW(perturbed_double_circle(0.05, 128), Error);
}

TEST(GammaEps, WindowForEveryDelta) {
  for (double delta : {0.5, 0.1, 0.02}) {
    const double eps = eps_for_energy_window(delta, 512);
    const double e = elastic_energy(perturbed_double_circle(eps, 512));
    EXPECT_GT(e, 4.0 * kPi);
    EXPECT_LT(e, 4.0 * kPi + delta);
  }
}
