#include "qic/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"

using qic::Ansatz;
using qic::OptimizeConfig;
using qic::ParameterVector;

namespace {

constexpr double kPi = std::numbers::pi;

ParameterVector random_params(std::size_t m, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  ParameterVector p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = dist(gen);
  return p;
}

}  // namespace

TEST(Objective, HandComputedMajorityAtZero) {
  const auto target = qic::majority_target(2);
  const double f = (1.0 + std::sqrt(2.0)) / 4.0;
  EXPECT_NEAR(qic::objective(Ansatz::linear(2), ParameterVector(3), target), std::sqrt(1.0 - f), 1e-14);
}

TEST(Objective, Periodic) {
  std::mt19937_64 gen(2);
  const auto a = Ansatz::quadratic(3);
  const auto target = qic::random_target(3, 4);
  auto p = random_params(a.param_count(), gen);
  const double base = qic::objective(a, p, target);
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] += 2.0 * kPi;
    EXPECT_NEAR(qic::objective(a, p, target), base, 1e-12);
    p[k] -= 2.0 * kPi;
  }
}

TEST(Objective, DimensionErrors) {
  EXPECT_THROW(qic::objective(Ansatz::linear(3), ParameterVector(3), qic::gaussian_target(3)), qic::DimensionError);
  EXPECT_THROW(qic::objective(Ansatz::linear(2), ParameterVector(3), qic::gaussian_target(3)), qic::DimensionError);
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 gen(6);
  constexpr double h = 1e-6;
  for (auto kind : {qic::AnsatzKind::Linear, qic::AnsatzKind::Quadratic, qic::AnsatzKind::Exponential}) {
    for (int n = 1; n <= 6; ++n) {
      const auto a = Ansatz::make(kind, n);
      const auto target = qic::mask_fraction(qic::random_target(n, n), n > 2 ? 0.3 : 0.0, 1);
      for (int point = 0; point < 5; ++point) {
        auto p = random_params(a.param_count(), gen);
        const auto g = qic::gradient(a, p, target);
        ASSERT_TRUE(g.has_value());
        for (std::size_t k = 0; k < p.size(); ++k) {
          const double saved = p[k];
          p[k] = saved + h;
          const double up = qic::objective(a, p, target);
          p[k] = saved - h;
          const double down = qic::objective(a, p, target);
          p[k] = saved;
          ASSERT_NEAR((up - down) / (2 * h), (*g)[k], 1e-6) << to_string(kind) << " N=" << n << " k=" << k;
        }
      }
    }
  }
}

TEST(Gradient, VanishesAtExactOptimum) {
  const auto target = qic::random_target(3, 12);
  const auto a = Ansatz::exponential(3);
  auto p = qic::solve_exponential(target);
  EXPECT_FALSE(qic::gradient(a, p, target).has_value());
  p[0] += 1e-7;
  const auto g = qic::gradient(a, p, target);
  ASSERT_TRUE(g.has_value());
  double norm = 0.0;
  for (double x : *g) norm += x * x;
  EXPECT_LT(std::sqrt(norm), 2.0);
  EXPECT_LT(qic::objective(a, p, target), 1e-6);
}

TEST(Minimize, GaussianLinearWithinBound) {
  const auto target = qic::gaussian_target(3);
  const auto a = Ansatz::linear(3);
  const auto r = qic::minimize(a, target, {});
  EXPECT_LT(r.final_distance, qic::worst_case_bound(4, 3));
  EXPECT_NEAR(r.final_distance, qic::objective(a, r.best_params, target), 1e-12);
  EXPECT_GE(r.restart_index, 0);
  EXPECT_LT(r.restart_index, 10);
}

TEST(Minimize, QuadraticBeatsLinearOnMajority) {
  const auto target = qic::majority_target(3);
  const auto lin = qic::minimize(Ansatz::linear(3), target, {});
  const auto qua = qic::minimize(Ansatz::quadratic(3), target, {});
  EXPECT_LT(qua.final_distance, lin.final_distance);
}

TEST(Minimize, DeterministicGivenSeed) {
  const auto target = qic::random_target(4, 3);
  OptimizeConfig config;
  config.seed = 99;
  config.restarts = 3;
  const auto a = qic::minimize(Ansatz::quadratic(4), target, config);
  const auto b = qic::minimize(Ansatz::quadratic(4), target, config);
  EXPECT_EQ(a.best_params, b.best_params);
  EXPECT_EQ(a.final_distance, b.final_distance);
  EXPECT_EQ(a.restart_index, b.restart_index);
}

TEST(Minimize, ExponentialReachesZero) {
  const auto target = qic::random_target(3, 5);
  const auto r = qic::minimize(Ansatz::exponential(3), target, {});
  EXPECT_LT(r.final_distance, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(Minimize, TiesGoToFirstRestart) {
  // Exact fits tie at zero distance; the first restart must win.
  const auto target = qic::random_target(2, 1);
  OptimizeConfig config;
  config.restarts = 4;
  EXPECT_EQ(qic::minimize(Ansatz::exponential(2), target, config).restart_index, 0);
}

TEST(Minimize, ZerosInit) {
  OptimizeConfig config;
  config.init = qic::InitScheme::Zeros;
  config.restarts = 1;
  const auto r = qic::minimize(Ansatz::linear(2), qic::gaussian_target(2), config);
  EXPECT_LE(r.final_distance, qic::objective(Ansatz::linear(2), ParameterVector(3), qic::gaussian_target(2)));
}

TEST(Config, Validation) {
  OptimizeConfig config;
  config.restarts = 0;
  EXPECT_THROW(config.validate(), qic::DomainError);
  config = {};
  config.gradient_tolerance = 0.0;
  EXPECT_THROW(config.validate(), qic::DomainError);
  config = {};
  config.max_iterations = -1;
  EXPECT_THROW(config.validate(), qic::DomainError);
  EXPECT_EQ(qic::parse_init_scheme("uniform"), qic::InitScheme::UniformRandom);
  EXPECT_THROW(qic::parse_init_scheme("bogus"), qic::ConfigError);
}

TEST(SolveExponential, SingleInputClosedForm) {
  const auto target = qic::TargetDistribution::from_conditionals(1, {0.3, 0.8});
  const double t0 = std::acos(std::sqrt(0.3));
  const double t1 = kPi / 2 - std::acos(std::sqrt(0.8));
  const auto p = qic::solve_exponential(target);
  EXPECT_NEAR(p[0], (t0 + t1) / 2, 1e-14);
  EXPECT_NEAR(p[1], (t0 - t1) / 2, 1e-14);
}

TEST(SolveExponential, ExactOnRandomTargets) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto target = qic::random_target(n, s);
      const auto p = qic::solve_exponential(target);
      ASSERT_LT(qic::objective(Ansatz::exponential(n), p, target), 1e-8);
    }
  }
  const auto target = qic::random_target(3, 77);
  EXPECT_LT(qic::objective(Ansatz::exponential(3), qic::solve_exponential(target), target), 1e-10);
}

TEST(SolveExponential, RoundTripFromCircuitOutput) {
  std::mt19937_64 gen(21);
  const auto a = Ansatz::exponential(4);
  const auto truth = random_params(a.param_count(), gen);
  const auto out = qic::conditional_output(a, truth);
  std::vector<double> p0(out.amps.size());
  for (std::size_t b = 0; b < p0.size(); ++b) p0[b] = out.prob(b, 0);
  const auto target = qic::TargetDistribution::from_conditionals(4, p0);
  const auto solved = qic::solve_exponential(target);
  const auto back = qic::conditional_output(a, solved);
  for (std::size_t b = 0; b < p0.size(); ++b) EXPECT_NEAR(back.prob(b, 0), p0[b], 1e-12);
}

TEST(SolveExponential, MaskedInputsGetQuarterTurn) {
  const auto target = qic::mask_fraction(qic::random_target(3, 2), 0.5, 3);
  const auto a = Ansatz::exponential(3);
  const auto out = qic::conditional_output(a, qic::solve_exponential(target));
  for (std::uint64_t b = 0; b < 8; ++b) {
    if (!target.seen(b)) EXPECT_NEAR(out.prob(b, 0), 0.5, 1e-12);
  }
  EXPECT_LT(qic::objective(a, qic::solve_exponential(target), target), 1e-8);
}
