#include "qic/quasi_newton.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "qic/errors.hpp"

namespace qic {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

}  // namespace

QuasiNewtonResult minimize_bfgs(const ObjectiveWithGradient& objective, std::vector<double> x0,
                                const QuasiNewtonOptions& options) {
  const auto n = static_cast<Eigen::Index>(x0.size());
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
  Eigen::VectorXd g(n);
  Eigen::VectorXd trial_x(n);
  Eigen::VectorXd trial_g(n);

  auto evaluate = [&objective, n](const Eigen::VectorXd& at, Eigen::VectorXd& grad) {
    const double v = objective(std::span<const double>(at.data(), static_cast<std::size_t>(n)),
                               std::span<double>(grad.data(), static_cast<std::size_t>(n)));
    if (!std::isfinite(v) || !grad.allFinite()) throw DomainError("objective returned a non-finite value");
    return v;
  };

  double f = evaluate(x, g);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool h_is_identity = true;
  bool scaled = false;
  int stalled = 0;

  QuasiNewtonResult result;
  int it = 0;
  for (;; ++it) {
    if (f <= options.value_target) {
      result.reason = StopReason::ValueTarget;
      break;
    }
    const double gnorm = options.sqrt_gradient_test ? g.norm() / (2.0 * std::sqrt(std::max(f, 0.0))) : g.norm();
    if (gnorm < options.gradient_tolerance) {
      result.reason = StopReason::GradientTolerance;
      break;
    }
    if (it >= options.max_iterations) {
      result.reason = StopReason::IterationLimit;
      break;
    }

    Eigen::VectorXd d = -h * g;
    if (g.dot(d) >= -1e-14 * g.norm() * d.norm()) {
      h.setIdentity();
      h_is_identity = true;
      d = -g;
    }

    double step = 1.0;
    if (h_is_identity && !scaled) step = std::min(1.0, 1.0 / g.norm());
    const double slope = g.dot(d);
    double trial_f = 0.0;
    bool accepted = false;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      trial_x = x + step * d;
      trial_f = evaluate(trial_x, trial_g);
      if (trial_f <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!h_is_identity) {
        h.setIdentity();
        h_is_identity = true;
        continue;
      }
      result.reason = StopReason::LineSearchFailure;
      break;
    }
    if (trial_f > f) throw InternalError("accepted quasi-Newton step increased the objective");

    const Eigen::VectorXd s = trial_x - x;
    const Eigen::VectorXd y = trial_g - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        h *= sy / y.dot(y);
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      // H+ = H - rho (s hy^T + hy s^T) + (rho^2 y^T H y + rho) s s^T
      h.noalias() -= rho * (s * hy.transpose() + hy * s.transpose());
      h.noalias() += (rho * rho * y.dot(hy) + rho) * (s * s.transpose());
      h_is_identity = false;
    }

    stalled = (f - trial_f) <= 1e-15 * (1.0 + std::abs(f)) ? stalled + 1 : 0;
    x = trial_x;
    g = trial_g;
    f = trial_f;
    if (stalled >= options.stall_limit) {
      ++it;
      result.reason = StopReason::Stalled;
      break;
    }
  }

  result.x.assign(x.data(), x.data() + n);
  result.value = f;
  result.gradient_norm = g.norm();
  result.iterations = it;
  return result;
}

}  // namespace qic
