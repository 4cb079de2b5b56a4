#include "qic/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qic/errors.hpp"
#include "qic/optimizer.hpp"
#include "qic/quasi_newton.hpp"
#include "qic/rng.hpp"

namespace qic {

namespace {

void check_samples(std::size_t sample_count) {
  if (sample_count < kMinSamples) {
    throw DomainError("at least " + std::to_string(kMinSamples) + " samples are required");
  }
}

ParameterVector random_angles(std::size_t m, std::uint64_t seed, std::uint64_t draw) {
  Rng rng(seed, Stream::MonteCarlo, draw);
  ParameterVector alpha(m);
  for (std::size_t k = 0; k < m; ++k) alpha[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return alpha;
}

}  // namespace

GradientStats gradient_statistics(const Ansatz& ansatz, const TargetDistribution& target,
                                  std::size_t sample_count, std::uint64_t seed) {
  check_samples(sample_count);
  std::vector<double> samples(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const auto g = gradient(ansatz, random_angles(ansatz.param_count(), seed, i), target);
    samples[i] = g ? g->front() : 0.0;
  }
  double mean = 0.0;
  double mean_abs = 0.0;
  for (double g : samples) {
    mean += g;
    mean_abs += std::abs(g);
  }
  mean /= static_cast<double>(sample_count);
  mean_abs /= static_cast<double>(sample_count);
  double var = 0.0;
  for (double g : samples) var += (g - mean) * (g - mean);
  var /= static_cast<double>(sample_count - 1);

  GradientStats stats;
  stats.n_inputs = ansatz.n_inputs();
  stats.param_count = ansatz.param_count();
  stats.sample_count = sample_count;
  stats.mean_abs_gradient = mean_abs;
  stats.gradient_variance = var;
  stats.seed = seed;
  return stats;
}

std::vector<GradientStats> gradient_statistics_vs_params(int n_inputs, const TargetDistribution& target,
                                                         std::size_t sample_count, std::uint64_t seed) {
  const auto pairs = static_cast<std::size_t>(n_inputs) * static_cast<std::size_t>(n_inputs - 1) / 2;
  std::vector<GradientStats> series;
  series.reserve(pairs + 1);
  for (std::size_t k = 0; k <= pairs; ++k) {
    series.push_back(gradient_statistics(Ansatz::linear_plus_pairs(n_inputs, k), target, sample_count, seed));
  }
  return series;
}

std::array<double, 3> reduced_target_state(const ConditionalOutput& out) {
  std::array<double, 3> rho{0.0, 0.0, 0.0};
  for (const auto& v : out.amps) {
    rho[0] += v[0] * v[0];
    rho[1] += v[0] * v[1];
    rho[2] += v[1] * v[1];
  }
  const double scale = 1.0 / static_cast<double>(out.amps.size());
  for (double& x : rho) x *= scale;
  return rho;
}

double entropy_bits(const std::array<double, 3>& rho) {
  const double half_trace = 0.5 * (rho[0] + rho[2]);
  const double half_gap = 0.5 * (rho[0] - rho[2]);
  const double radius = std::sqrt(half_gap * half_gap + rho[1] * rho[1]);
  double s = 0.0;
  for (double lambda : {half_trace + radius, half_trace - radius}) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return std::clamp(s, 0.0, 1.0);
}

double target_entropy(const Ansatz& ansatz, const ParameterVector& params) {
  return entropy_bits(reduced_target_state(conditional_output(ansatz, params)));
}

EntropyStats mean_entropy(const Ansatz& ansatz, std::size_t sample_count, std::uint64_t seed) {
  check_samples(sample_count);
  double total = 0.0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    total += target_entropy(ansatz, random_angles(ansatz.param_count(), seed, i));
  }
  EntropyStats stats;
  stats.n_inputs = ansatz.n_inputs();
  stats.param_count = ansatz.param_count();
  stats.sample_count = sample_count;
  stats.mean_entropy = total / static_cast<double>(sample_count);
  stats.seed = seed;
  return stats;
}

ExpFit fit_entropy_curve(std::span<const CurvePoint> points) {
  if (points.size() < 4) throw DomainError("entropy fit needs at least four points");

  ExpFit fit;
  double mean = 0.0;
  for (const auto& p : points) mean += p.value;
  mean /= static_cast<double>(points.size());
  double spread = 0.0;
  for (const auto& p : points) spread += (p.value - mean) * (p.value - mean);
  if (spread < 1e-12) {
    fit.a = 1.0;
    fit.b = 0.0;
    fit.c = 0.0;
    fit.residual = spread;
    fit.degenerate = true;
    return fit;
  }

  const ObjectiveWithGradient loss = [points](std::span<const double> x, std::span<double> g) {
    const double a = x[0];
    const double b = x[1];
    const double c = x[2];
    std::fill(g.begin(), g.end(), 0.0);
    if (!(a > 1e-9)) return 1e300;  // outside the model's domain; never accepted
    const double log_a = std::log(a);
    double total = 0.0;
    for (const auto& p : points) {
      const double decay = std::exp(-b * log_a * (p.n - c));
      const double r = (1.0 - decay) - p.value;
      total += r * r;
      g[0] += 2.0 * r * decay * b * (p.n - c) / a;
      g[1] += 2.0 * r * decay * log_a * (p.n - c);
      g[2] -= 2.0 * r * decay * b * log_a;
    }
    return total;
  };

  QuasiNewtonOptions options;
  options.max_iterations = 5000;
  options.gradient_tolerance = 1e-12;
  const QuasiNewtonResult run =
      minimize_bfgs(loss, std::vector<double>(kEntropyFitStart.begin(), kEntropyFitStart.end()), options);
  fit.a = run.x[0];
  fit.b = run.x[1];
  fit.c = run.x[2];
  fit.residual = run.value;
  fit.rate = fit.b * std::log(fit.a);
  fit.converged = run.converged() || run.reason == StopReason::Stalled;
  fit.degenerate = !(fit.a > 1.0 && fit.b > 0.0);
  return fit;
}

}  // namespace qic
