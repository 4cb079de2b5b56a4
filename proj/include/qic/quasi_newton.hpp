#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace qic {

/// Objective callback: returns f(x) and writes the gradient into `grad`.
using ObjectiveWithGradient = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct QuasiNewtonOptions {
  int max_iterations = 1000;
  double gradient_tolerance = 1e-8;
  /// Stop as soon as f(x) drops to or below this value.
  double value_target = -std::numeric_limits<double>::infinity();
  /// Consecutive accepted steps with no measurable decrease before giving up.
  int stall_limit = 20;
  /// Apply gradient_tolerance to the gradient of sqrt(f), i.e. |grad f| / (2 sqrt f),
  /// for nonnegative objectives minimized through their square.
  bool sqrt_gradient_test = false;
};

enum class StopReason { GradientTolerance, ValueTarget, IterationLimit, LineSearchFailure, Stalled };

struct QuasiNewtonResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  StopReason reason = StopReason::IterationLimit;

  [[nodiscard]] bool converged() const noexcept {
    return reason == StopReason::GradientTolerance || reason == StopReason::ValueTarget;
  }
};

/**
 * BFGS with an inverse-Hessian update and Armijo backtracking.
 *
 * Accepted steps never increase f. The first curvature pair rescales the
 * initial identity (Shanno-Phua); updates with nonpositive curvature are
 * skipped, and a non-descent direction resets the approximation to the
 * identity.
 */
QuasiNewtonResult minimize_bfgs(const ObjectiveWithGradient& objective, std::vector<double> x0,
                                const QuasiNewtonOptions& options);

}  // namespace qic
