#include <cmath>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "spherelab/curve_io.hpp"
#include "spherelab/spectral.hpp"

using namespace spherelab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Spectral, DerivativesOfTrigPolynomial) {
  const std::size_t n = 64;
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    f[j] = std::sin(3.0 * t) + 0.5 * std::cos(t);
  }
  const auto d1 = spectral_derivative(f, 2.0 * kPi, 1);
  const auto d2 = spectral_derivative(f, 2.0 * kPi, 2);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    EXPECT_NEAR(d1[j], 3.0 * std::cos(3.0 * t) - 0.5 * std::sin(t), 1e-12);
    EXPECT_NEAR(d2[j], -9.0 * std::sin(3.0 * t) - 0.5 * std::cos(t), 1e-11);
  }
}

TEST(Spectral, RoundTripAndTail) {
  const std::size_t n = 48;
  Fft fft(n);
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = std::exp(std::cos(2.0 * kPi * j / n));
  const auto back = fft.backward_real(fft.forward_real(f));
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(back[j], f[j], 1e-14);
  EXPECT_LT(spectral_tail(f), 1e-8);
  std::vector<double> step(n, 0.0);
  for (std::size_t j = 0; j < n / 2; ++j) step[j] = 1.0;
  EXPECT_GT(spectral_tail(step), 1e-3);
  EXPECT_EQ(signed_frequency(47, 48), -1.0);
}

TEST(CurveIo, RoundTripIsExact) {
  const auto c = wobbly_circle(0.2, 64);
  const auto d = curve_from_json(curve_to_json(c));
  ASSERT_EQ(d.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(norm(d[i].vec() - c[i].vec()), 0.0, 1e-15);
  const auto path = std::filesystem::temp_directory_path() / "spherelab_roundtrip.json";
  save_curve(c, path);
  EXPECT_EQ(load_curve(path).size(), c.size());
  std::filesystem::remove(path);
}

TEST(CurveIo, RejectsMalformedInput) {
  EXPECT_THROW(curve_from_json("{\"a\": 1}"), Error);
  EXPECT_THROW(curve_from_json("[[1,0]]"), Error);
  EXPECT_THROW(curve_from_json("not json"), Error);
  EXPECT_THROW(load_curve("/nonexistent/dir/curve.json"), Error);
}
