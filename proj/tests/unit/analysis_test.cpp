#include "qic/analysis.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qic/errors.hpp"
#include "qic/optimizer.hpp"
#include "qic/rng.hpp"

using qic::Ansatz;
using qic::ParameterVector;

TEST(Entropy, ZeroAnglesAreMaximal) {
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(qic::target_entropy(Ansatz::linear(n), ParameterVector(n + 1)), 1.0, 1e-12);
}

TEST(Entropy, SingleInputQuarterTurn) {
  const ParameterVector p(std::vector<double>{0.0, std::numbers::pi / 4});
  EXPECT_NEAR(qic::target_entropy(Ansatz::linear(1), p), 1.0, 1e-12);
}

TEST(Entropy, ProductStateIsPure) {
  // Identical blocks for every input leave the target unentangled.
  qic::ConditionalOutput out{2, {}};
  for (int b = 0; b < 4; ++b) out.amps.push_back({std::cos(0.3), std::sin(0.3)});
  EXPECT_NEAR(qic::entropy_bits(qic::reduced_target_state(out)), 0.0, 1e-12);
}

TEST(Entropy, ReducedStateIsDensityMatrix) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int n = 1; n <= 10; ++n) {
    const auto a = Ansatz::linear(n);
    for (int draw = 0; draw < 10; ++draw) {
      ParameterVector p(a.param_count());
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = u(gen);
      const auto rho = qic::reduced_target_state(qic::conditional_output(a, p));
      EXPECT_NEAR(rho[0] + rho[2], 1.0, 1e-12);
      EXPECT_GE(rho[0] * rho[2] - rho[1] * rho[1], -1e-12);
      const double s = qic::entropy_bits(rho);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
  }
}

TEST(MeanEntropy, DeterministicAndIncreasing) {
  const auto a = qic::mean_entropy(Ansatz::linear(4), 200, 1);
  const auto b = qic::mean_entropy(Ansatz::linear(4), 200, 1);
  EXPECT_EQ(a.mean_entropy, b.mean_entropy);
  const auto lo = qic::mean_entropy(Ansatz::linear(3), 1000, 2);
  const auto hi = qic::mean_entropy(Ansatz::linear(6), 1000, 2);
  EXPECT_LT(lo.mean_entropy, hi.mean_entropy);
  EXPECT_THROW(qic::mean_entropy(Ansatz::linear(3), 99, 0), qic::DomainError);
}

TEST(MeanEntropy, QuadraticCloseToLinear) {
  for (int n = 4; n <= 7; ++n) {
    const double lin = qic::mean_entropy(Ansatz::linear(n), 1000, 5).mean_entropy;
    const double qua = qic::mean_entropy(Ansatz::quadratic(n), 1000, 5).mean_entropy;
    EXPECT_LT(std::abs(lin - qua), 0.05) << n;
  }
}

TEST(GradientStats, ReproducibleAndDecaying) {
  const auto t4 = qic::gaussian_target(4);
  const auto a = qic::gradient_statistics(Ansatz::linear(4), t4, 500, 3);
  const auto b = qic::gradient_statistics(Ansatz::linear(4), t4, 500, 3);
  EXPECT_EQ(a.gradient_variance, b.gradient_variance);
  EXPECT_EQ(a.sample_count, 500u);
  const auto c = qic::gradient_statistics(Ansatz::linear(8), qic::gaussian_target(8), 500, 3);
  EXPECT_LT(c.gradient_variance, a.gradient_variance);
  EXPECT_GE(c.gradient_variance, 0.0);
  EXPECT_THROW(qic::gradient_statistics(Ansatz::linear(4), t4, 10, 0), qic::DomainError);
}

// Same draws as gradient_statistics, differentiated numerically.
TEST(GradientStats, AgreesWithFiniteDifferenceStatistics) {
  const int n = 5;
  const auto ansatz = Ansatz::linear(n);
  const auto target = qic::gaussian_target(n);
  const std::size_t samples = 1000;
  const auto stats = qic::gradient_statistics(ansatz, target, samples, 8);

  qic::ParameterVector p(ansatz.param_count());
  double sum = 0.0;
  double sum_sq = 0.0;
  double abs_sum = 0.0;
  constexpr double h = 1e-6;
  for (std::size_t i = 0; i < samples; ++i) {
    qic::Rng rng(8, qic::Stream::MonteCarlo, i);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double saved = p[0];
    p[0] = saved + h;
    const double up = qic::objective(ansatz, p, target);
    p[0] = saved - h;
    const double down = qic::objective(ansatz, p, target);
    const double g = (up - down) / (2 * h);
    sum += g;
    sum_sq += g * g;
    abs_sum += std::abs(g);
  }
  const double mean = sum / samples;
  const double var = (sum_sq - samples * mean * mean) / (samples - 1);
  EXPECT_NEAR(stats.mean_abs_gradient, abs_sum / samples, 1e-6);
  EXPECT_NEAR(stats.gradient_variance, var, 3.0 * var * std::sqrt(2.0 / (samples - 1)));
}

TEST(GradientStats, ParameterSweep) {
  const auto target = qic::gaussian_target(4);
  const auto sweep = qic::gradient_statistics_vs_params(4, target, 200, 4);
  ASSERT_EQ(sweep.size(), qic::param_count(qic::AnsatzKind::Quadratic, 4) -
                              qic::param_count(qic::AnsatzKind::Linear, 4) + 1);
  const auto plain = qic::gradient_statistics(Ansatz::linear(4), target, 200, 4);
  EXPECT_EQ(sweep.front().gradient_variance, plain.gradient_variance);
  EXPECT_EQ(sweep.front().param_count, 5u);
  EXPECT_EQ(sweep.back().param_count, 11u);
}

TEST(EntropyFit, ConstantDataIsDegenerate) {
  std::vector<qic::CurvePoint> pts;
  for (int n = 3; n <= 8; ++n) pts.push_back({static_cast<double>(n), 0.7});
  EXPECT_TRUE(qic::fit_entropy_curve(pts).degenerate);
  EXPECT_THROW(qic::fit_entropy_curve(std::span(pts).first(3)), qic::DomainError);
}

TEST(EntropyFit, RecoversDecayRate) {
  // Only b * ln(a) and c enter the model, so the rate is what a fit can pin down.
  const double a = 1.2;
  const double b = 3.2;
  const double c = 0.8;
  std::vector<qic::CurvePoint> pts;
  for (int n = 3; n <= 9; ++n) pts.push_back({static_cast<double>(n), 1.0 - std::pow(a, -b * (n - c))});
  const auto fit = qic::fit_entropy_curve(pts);
  EXPECT_NEAR(fit.rate, b * std::log(a), 1e-4);
  EXPECT_NEAR(fit.c, c, 1e-3);
  EXPECT_LT(fit.residual, 1e-10);
  EXPECT_FALSE(fit.degenerate);
}
