#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qic/ansatz.hpp"
#include "qic/targets.hpp"

namespace qic {

/// Monte-Carlo statistics of dC/d(alpha_0) over uniformly random parameters.
struct GradientStats {
  int n_inputs = 0;
  std::size_t param_count = 0;
  std::size_t sample_count = 0;
  double mean_abs_gradient = 0.0;
  double gradient_variance = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinSamples = 100;

/// Draws alpha uniformly in [0, 2 pi)^M (MonteCarlo stream, one substream
/// per draw) and records the analytic derivative with respect to alpha_0.
GradientStats gradient_statistics(const Ansatz& ansatz, const TargetDistribution& target,
                                  std::size_t sample_count, std::uint64_t seed);

/// One GradientStats per ansatz linear_plus_pairs(N, k), k = 0..N(N-1)/2.
std::vector<GradientStats> gradient_statistics_vs_params(int n_inputs, const TargetDistribution& target,
                                                         std::size_t sample_count, std::uint64_t seed);

/// Target-qubit reduced state {rho_00, rho_01, rho_11} under a uniform input register.
std::array<double, 3> reduced_target_state(const ConditionalOutput& out);

/// von Neumann entropy (base 2) of a 2x2 real symmetric density matrix.
double entropy_bits(const std::array<double, 3>& rho);

/// Entanglement entropy between the target qubit and the input register.
double target_entropy(const Ansatz& ansatz, const ParameterVector& params);

struct EntropyStats {
  int n_inputs = 0;
  std::size_t param_count = 0;
  std::size_t sample_count = 0;
  double mean_entropy = 0.0;
  std::uint64_t seed = 0;
};

EntropyStats mean_entropy(const Ansatz& ansatz, std::size_t sample_count, std::uint64_t seed);

struct CurvePoint {
  double n = 0.0;
  double value = 0.0;
};

/// Least-squares fit of S(N) = 1 - a^(-b (N - c)).
struct ExpFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  /// Sum of squared residuals.
  double residual = 0.0;
  /// b * ln(a): the decay rate per qubit.
  double rate = 0.0;
  bool converged = false;
  /// Set when the data show no decay to fit or the fit leaves a > 1, b > 0.
  bool degenerate = false;
};

/// Starting point of the fit.
inline constexpr std::array<double, 3> kEntropyFitStart{2.0, 1.0, 0.0};

/// Fits with the shared BFGS core; needs at least four points.
ExpFit fit_entropy_curve(std::span<const CurvePoint> points);

}  // namespace qic
