#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "spherelab/flow_engine.hpp"
#include "spherelab/second_variation.hpp"

using namespace spherelab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(FlowConfigTest, Validation) {
  FlowConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.dt_init = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = FlowConfig{};
  cfg.velocity_tol = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(FlowStep, GreatCircleIsStationary) {
  FlowConfig cfg;
  cfg.n = 256;
  FlowState s(great_circle(256), cfg.dt_init);
  for (int i = 0; i < 5; ++i) {
    const FlowState next = step(s, cfg);
    EXPECT_LT(std::abs(next.energy - s.energy), 1e-10);
    s = next;
  }
}

TEST(FlowStep, EnergyDecreasesFromGammaEps) {
  FlowConfig cfg;
  const FlowState s(perturbed_double_circle(0.05, 512), cfg.dt_init);
  EXPECT_NEAR(s.energy, elastic_energy(s.curve), 1e-12);
  const FlowState next = step(s, cfg);
  EXPECT_LT(next.energy, s.energy);
  EXPECT_GT(next.t, s.t);
  for (const auto& v : next.curve.vertices()) EXPECT_NEAR(norm(v.vec()), 1.0, 1e-12);
}

TEST(FlowStep, UnderflowWhenNoDecreaseIsAccepted) {
  FlowConfig cfg;
  cfg.energy_slack = -1.0;  // demands a negative energy
  const FlowState s(perturbed_double_circle(0.05, 512), cfg.dt_init);
  try {
    step(s, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StepSizeUnderflow);
  }
}

TEST(RunToConvergence, CounterexampleReachesDoubleCircle) {
  FlowConfig cfg;
  const auto [trace, lc] = run_to_convergence(perturbed_double_circle(0.05, 512), cfg);
  EXPECT_EQ(lc.tag, LimitTag::DoubleCircle);
  EXPECT_LT(lc.residual, cfg.velocity_tol);
  EXPECT_NEAR(trace.samples.back().energy, 4.0 * kPi, 1e-3);
  EXPECT_EQ(trace.samples.front().self_intersections, 1u);
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    EXPECT_GT(trace.samples[i].t, trace.samples[i - 1].t);
    EXPECT_LE(trace.samples[i].energy, trace.samples[i - 1].energy * (1.0 + 1e-9));
    EXPECT_EQ(trace.samples[i].ind2, 0);
  }
  const auto d = verify_dichotomy(trace);
  EXPECT_EQ(d.alternative, 'B');
  EXPECT_TRUE(d.energy_monotone);
}

TEST(RunToConvergence, FinalEnergyStableUnderRefinement) {
  FlowConfig coarse;
  FlowConfig fine;
  fine.n = 1024;
  const auto c0 = perturbed_double_circle(0.05, 1024);
  const double e512 = run_to_convergence(c0, coarse).first.samples.back().energy;
  const double e1024 = run_to_convergence(c0, fine).first.samples.back().energy;
  EXPECT_LT(std::abs(e512 - e1024), 5e-4);
}

TEST(RunToConvergence, PerturbedSingleCircle) {
  FlowConfig cfg;
  const auto [trace, lc] = run_to_convergence(wobbly_circle(0.2, 512), cfg);
  EXPECT_EQ(lc.tag, LimitTag::SingleCircle);
  EXPECT_NEAR(trace.samples.back().energy, 2.0 * kPi, 1e-3);
  const auto d = verify_dichotomy(trace);
  EXPECT_EQ(d.alternative, 'A');
  EXPECT_EQ(d.ind2, 1);
}

TEST(RunToConvergence, ExactDoubleCircleStopsImmediately) {
  FlowConfig cfg;
  const auto [trace, lc] = run_to_convergence(great_circle(512, 2), cfg);
  EXPECT_EQ(lc.tag, LimitTag::DoubleCircle);
  EXPECT_LE(trace.samples.size(), 3u);
  EXPECT_EQ(lc.stop, StopReason::Stationary);
}

TEST(RunToConvergence, TripleCircleIsUnresolvedTag) {
  FlowConfig cfg;
  cfg.n = 768;
  const auto lc = classify_limit(great_circle(768, 3), cfg);
  EXPECT_EQ(lc.winding, 3);
  EXPECT_EQ(lc.tag, LimitTag::Unresolved);
}

TEST(ClassifyLimit, NonGeodesicElasticaAndUnresolved) {
  FlowConfig cfg;
  cfg.velocity_tol = 1e-2;
  EXPECT_EQ(classify_limit(latitude_circle(kPi / 2.0 - 1e-6, 256), cfg).tag, LimitTag::SingleCircle);
  FlowConfig strict;
  EXPECT_EQ(classify_limit(perturbed_double_circle(0.1, 512), strict).tag, LimitTag::Unresolved);
}

TEST(VerifyDichotomy, RejectsInjectedIncrease) {
  FlowConfig cfg;
  auto trace = run_to_convergence(wobbly_circle(0.2, 512), cfg).first;
  trace.samples[trace.samples.size() / 2].energy += 1.0;
  try {
    verify_dichotomy(trace);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentTrace);
  }
}

TEST(VerifyDichotomy, RejectsWrongEndpoint) {
  FlowTrace t;
  t.samples.push_back({0.0, 20.0, 1e-3, 0, 0, std::nullopt});
  t.samples.push_back({1.0, 19.0, 1e-3, 0, 0, std::nullopt});
  EXPECT_THROW(verify_dichotomy(t), Error);
}

TEST(TraceCsv, HeaderAndRows) {
  FlowTrace t;
  t.samples.push_back({0.0, 12.5, 1e-3, 0, 1, std::nullopt});
  const auto csv = trace_to_csv(t);
  EXPECT_EQ(csv, "t,energy,dt,ind2,self_intersections\n0,12.5,0.001,0,1\n");
}
