#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qic/ansatz.hpp"
#include "qic/targets.hpp"

namespace qic {

enum class InitScheme {
  Zeros,          ///< every angle 0
  UniformRandom,  ///< uniform in [0, 2 pi)
  SmallRandom,    ///< uniform in [-scale, scale]
};

std::string_view to_string(InitScheme scheme);
InitScheme parse_init_scheme(std::string_view name);

struct OptimizeConfig {
  /// 0 selects 500 * M.
  int max_iterations = 0;
  double gradient_tolerance = 1e-8;
  int restarts = 10;
  std::uint64_t seed = 0;
  InitScheme init = InitScheme::SmallRandom;
  double small_scale = 0.1;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct OptimizeResult {
  ParameterVector best_params;
  double final_distance = 1.0;
  int iterations_used = 0;
  bool converged = false;
  int restart_index = 0;
};

/// Below this distance the objective counts as exactly minimized.
inline constexpr double kDistanceFloor = 1e-12;

/**
 * Imputation cost sqrt(1 - |F|), with F the state overlap between target
 * and circuit over the seen inputs (unseen inputs contribute nothing and the
 * overlap is renormalized over the seen set).
 */
double objective(const Ansatz& ansatz, const ParameterVector& params, const TargetDistribution& target);

/**
 * Analytic gradient of objective(), assembled from per-block derivatives
 * through the sign table in O(M 2^N). Empty when the objective is below
 * kDistanceFloor, where the square root is not differentiable.
 */
std::optional<std::vector<double>> gradient(const Ansatz& ansatz, const ParameterVector& params,
                                            const TargetDistribution& target);

/// Multi-start BFGS; best restart wins, ties go to the lower restart index.
OptimizeResult minimize(const Ansatz& ansatz, const TargetDistribution& target, const OptimizeConfig& config);

/// Largest N accepted by solve_exponential (dense 2^N x 2^N solve).
inline constexpr int kExactSolveMaxInputs = 12;

/**
 * Exact parameters of the exponential ansatz for `target`, from the linear
 * system mapping parameters to block angles. Blocks with an X flip need
 * angle pi/2 - theta_b; unseen inputs get theta_b = pi/4.
 */
ParameterVector solve_exponential(const TargetDistribution& target);

}  // namespace qic
