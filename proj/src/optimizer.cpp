#include "qic/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "qic/errors.hpp"
#include "qic/metrics.hpp"
#include "qic/quasi_newton.hpp"
#include "qic/rng.hpp"

namespace qic {

namespace {

// Squared cost D = 1 - |F| and its gradient. D shares its minimizers with
// sqrt(D) but stays smooth at the optimum, so BFGS runs on D.
class SquaredCost {
 public:
  SquaredCost(const Ansatz& ansatz, const TargetDistribution& target) : ansatz_(ansatz), target_(target) {
    if (ansatz.n_inputs() != target.n_inputs()) {
      throw DimensionError("ansatz has N=" + std::to_string(ansatz.n_inputs()) + ", target has N=" +
                           std::to_string(target.n_inputs()));
    }
    const auto p0 = target.conditional_zero();
    root0_.resize(p0.size());
    root1_.resize(p0.size());
    for (std::size_t b = 0; b < p0.size(); ++b) {
      root0_[b] = std::sqrt(p0[b]);
      root1_[b] = std::sqrt(1.0 - p0[b]);
    }
  }

  // Returns D; fills grad with dD/dalpha when non-empty.
  double operator()(std::span<const double> params, std::span<double> grad) const {
    const std::size_t m = ansatz_.param_count();
    const std::size_t blocks = ansatz_.block_count();
    double aligned = 0.0;
    double anti = 0.0;
    dfdtheta_.assign(blocks, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
      if (!target_.seen(b)) continue;
      const auto row = ansatz_.sign_row(b);
      double theta = 0.0;
      for (std::size_t k = 0; k < m; ++k) theta += row[k] ? -params[k] : params[k];
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const bool flip = ansatz_.flip(b) != 0;
      const double v0 = flip ? s : c;
      const double v1 = flip ? c : s;
      const double dv0 = flip ? c : -s;
      const double dv1 = flip ? -s : c;
      const double u0 = root0_[b];
      const double u1 = root1_[b];
      aligned += (u0 - v0) * (u0 - v0) + (u1 - v1) * (u1 - v1);
      anti += (u0 + v0) * (u0 + v0) + (u1 + v1) * (u1 + v1);
      dfdtheta_[b] = u0 * dv0 + u1 * dv1;
    }
    const double scale = 1.0 / static_cast<double>(target_.seen_count());
    aligned *= 0.5 * scale;
    anti *= 0.5 * scale;
    const bool positive = aligned <= anti;
    if (!grad.empty()) {
      // D = 1 - F for positive overlap, 1 + F otherwise.
      const double sign = positive ? -scale : scale;
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t b = 0; b < blocks; ++b) {
        if (!target_.seen(b)) continue;
        const auto row = ansatz_.sign_row(b);
        const double d = dfdtheta_[b];
        for (std::size_t k = 0; k < m; ++k) grad[k] += row[k] ? -d : d;
      }
      for (double& x : grad) x *= sign;
    }
    return std::max(0.0, positive ? aligned : anti);
  }

 private:
  const Ansatz& ansatz_;
  const TargetDistribution& target_;
  std::vector<double> root0_;
  std::vector<double> root1_;
  mutable std::vector<double> dfdtheta_;
};

std::vector<double> initial_point(const OptimizeConfig& config, std::size_t m, int restart) {
  std::vector<double> x(m, 0.0);
  if (config.init == InitScheme::Zeros) return x;
  Rng rng(config.seed, Stream::Init, static_cast<std::uint64_t>(restart));
  for (double& v : x) {
    v = config.init == InitScheme::UniformRandom ? rng.uniform(0.0, 2.0 * std::numbers::pi)
                                                 : rng.uniform(-config.small_scale, config.small_scale);
  }
  return x;
}

}  // namespace

std::string_view to_string(InitScheme scheme) {
  switch (scheme) {
    case InitScheme::Zeros: return "zeros";
    case InitScheme::UniformRandom: return "uniform_random";
    case InitScheme::SmallRandom: return "small_random";
  }
  return "unknown";
}

InitScheme parse_init_scheme(std::string_view name) {
  if (name == "zeros") return InitScheme::Zeros;
  if (name == "uniform_random" || name == "uniform") return InitScheme::UniformRandom;
  if (name == "small_random" || name == "small") return InitScheme::SmallRandom;
  throw ConfigError("unknown init scheme '" + std::string(name) + "'");
}

void OptimizeConfig::validate() const {
  if (max_iterations < 0) throw DomainError("max_iterations must be >= 1 (or 0 for the default)");
  if (!(gradient_tolerance > 0.0)) throw DomainError("gradient_tolerance must be positive");
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  if (!(small_scale > 0.0)) throw DomainError("small_scale must be positive");
}

double objective(const Ansatz& ansatz, const ParameterVector& params, const TargetDistribution& target) {
  check_dimensions(ansatz, params);
  const SquaredCost cost(ansatz, target);
  return std::sqrt(cost(params.values(), {}));
}

std::optional<std::vector<double>> gradient(const Ansatz& ansatz, const ParameterVector& params,
                                            const TargetDistribution& target) {
  check_dimensions(ansatz, params);
  const SquaredCost cost(ansatz, target);
  std::vector<double> grad(ansatz.param_count());
  const double d = cost(params.values(), grad);
  const double c = std::sqrt(d);
  if (c < kDistanceFloor) return std::nullopt;
  for (double& g : grad) g /= 2.0 * c;
  return grad;
}

OptimizeResult minimize(const Ansatz& ansatz, const TargetDistribution& target, const OptimizeConfig& config) {
  config.validate();
  const SquaredCost cost(ansatz, target);
  const std::size_t m = ansatz.param_count();

  QuasiNewtonOptions options;
  options.max_iterations = config.max_iterations > 0 ? config.max_iterations : static_cast<int>(500 * m);
  options.gradient_tolerance = config.gradient_tolerance;
  options.value_target = kDistanceFloor * kDistanceFloor;
  options.sqrt_gradient_test = true;

  const ObjectiveWithGradient fn = [&cost](std::span<const double> x, std::span<double> g) { return cost(x, g); };

  OptimizeResult best;
  bool have_best = false;
  for (int r = 0; r < config.restarts; ++r) {
    const QuasiNewtonResult run = minimize_bfgs(fn, initial_point(config, m, r), options);
    const double distance = std::sqrt(std::clamp(run.value, 0.0, 1.0));
    // Distances within the floor of each other are ties.
    if (!have_best || distance < best.final_distance - kDistanceFloor) {
      best.best_params = ParameterVector(run.x);
      best.final_distance = distance;
      best.iterations_used = run.iterations;
      best.converged = run.converged();
      best.restart_index = r;
      have_best = true;
    }
  }
  return best;
}

ParameterVector solve_exponential(const TargetDistribution& target) {
  const int n = target.n_inputs();
  if (n > kExactSolveMaxInputs) {
    throw ResourceError("exact exponential solve is limited to N <= " + std::to_string(kExactSolveMaxInputs));
  }
  const Ansatz ansatz = Ansatz::exponential(n);
  const auto angles = target_angles(target);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(ansatz.block_count()));
  for (std::size_t b = 0; b < ansatz.block_count(); ++b) {
    const double theta = angles[b].value_or(std::numbers::pi / 4);
    rhs(static_cast<Eigen::Index>(b)) = ansatz.flip(b) ? std::numbers::pi / 2 - theta : theta;
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(sign_matrix(ansatz));
  if (!lu.isInvertible()) throw InternalError("exponential sign matrix is singular");
  const Eigen::VectorXd alpha = lu.solve(rhs);
  return ParameterVector(std::vector<double>(alpha.data(), alpha.data() + alpha.size()));
}

}  // namespace qic
