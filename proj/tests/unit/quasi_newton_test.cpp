#include "qic/quasi_newton.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qic/errors.hpp"

using qic::minimize_bfgs;
using qic::QuasiNewtonOptions;

TEST(Bfgs, Quadratic) {
  const qic::ObjectiveWithGradient f = [](std::span<const double> x, std::span<double> g) {
    if (!g.empty()) {
      g[0] = 2.0 * (x[0] - 1.0);
      g[1] = 20.0 * (x[1] + 2.0);
    }
    return (x[0] - 1.0) * (x[0] - 1.0) + 10.0 * (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto r = minimize_bfgs(f, {0.0, 0.0}, {});
  EXPECT_TRUE(r.converged());
  EXPECT_NEAR(r.x[0], 1.0, 1e-8);
  EXPECT_NEAR(r.x[1], -2.0, 1e-8);
}

TEST(Bfgs, Rosenbrock) {
  const qic::ObjectiveWithGradient f = [](std::span<const double> x, std::span<double> g) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    if (!g.empty()) {
      g[0] = -2.0 * a - 400.0 * x[0] * b;
      g[1] = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
  };
  QuasiNewtonOptions opts;
  opts.max_iterations = 2000;
  const auto r = minimize_bfgs(f, {-1.2, 1.0}, opts);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(Bfgs, ValueTargetStopsEarly) {
  const qic::ObjectiveWithGradient f = [](std::span<const double> x, std::span<double> g) {
    if (!g.empty()) g[0] = 2.0 * x[0];
    return x[0] * x[0];
  };
  QuasiNewtonOptions opts;
  opts.value_target = 0.5;
  const auto r = minimize_bfgs(f, {3.0}, opts);
  EXPECT_EQ(r.reason, qic::StopReason::ValueTarget);
  EXPECT_LE(r.value, 0.5);
}

TEST(Bfgs, IterationLimit) {
  const qic::ObjectiveWithGradient f = [](std::span<const double> x, std::span<double> g) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    if (!g.empty()) {
      g[0] = -2.0 * a - 400.0 * x[0] * b;
      g[1] = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
  };
  QuasiNewtonOptions opts;
  opts.max_iterations = 3;
  const auto r = minimize_bfgs(f, {-1.2, 1.0}, opts);
  EXPECT_EQ(r.reason, qic::StopReason::IterationLimit);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_FALSE(r.converged());
}

TEST(Bfgs, NonFiniteObjectiveThrows) {
  const qic::ObjectiveWithGradient f = [](std::span<const double>, std::span<double> g) {
    if (!g.empty()) g[0] = 0.0;
    return std::nan("");
  };
  EXPECT_THROW(minimize_bfgs(f, {0.0}, {}), qic::DomainError);
}
