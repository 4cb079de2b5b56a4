#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qic {

/**
 * Joint distribution over (input bitstring b, output bit a).
 *
 * Stored as true probabilities p(b, a) = p(a|b) / (number of seen inputs),
 * index (b << 1) | a, so the joint sums to one and every seen row carries the
 * same marginal weight as the Hadamard-prepared input register. Unseen
 * inputs (removed by masking) hold zero mass in both entries.
 */
class TargetDistribution {
 public:
  /// `p0[b]` is p(0|b). An empty `seen` means every input is seen.
  static TargetDistribution from_conditionals(int n_inputs, std::vector<double> p0,
                                              std::vector<bool> seen = {});

  [[nodiscard]] int n_inputs() const noexcept { return n_inputs_; }
  [[nodiscard]] std::size_t input_count() const noexcept { return p0_.size(); }
  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] double joint(std::uint64_t b, int a) const { return probs_[(b << 1) | static_cast<unsigned>(a)]; }
  [[nodiscard]] bool seen(std::uint64_t b) const { return seen_[b]; }
  [[nodiscard]] const std::vector<bool>& seen_mask() const noexcept { return seen_; }
  [[nodiscard]] std::size_t seen_count() const noexcept { return seen_count_; }
  [[nodiscard]] bool fully_seen() const noexcept { return seen_count_ == p0_.size(); }

  /// p(a|b) for a seen input; DomainError for unseen inputs.
  [[nodiscard]] double conditional(std::uint64_t b, int a) const;

  /// p(0|b) for every input, with 0 stored for unseen inputs.
  [[nodiscard]] std::span<const double> conditional_zero() const noexcept { return p0_; }

 private:
  int n_inputs_ = 0;
  std::vector<double> p0_;
  std::vector<bool> seen_;
  std::size_t seen_count_ = 0;
  std::vector<double> probs_;
};

struct GaussianOptions {
  /// Defaults to (N - 1) / 2.
  std::optional<double> center;
  double sigma2 = 0.5;
};

/// p(0|n) = exp(-(n - c)^2 / (2 sigma^2)) / sqrt(2 pi), p(1|n) = 1 - p(0|n).
TargetDistribution gaussian_target(int n_inputs, const GaussianOptions& options = {});

/// Output bit equals the majority input bit; ties split evenly.
TargetDistribution majority_target(int n_inputs);

/// p(0|b) uniform in [0, 1), drawn from the Target stream of `seed`.
TargetDistribution random_target(int n_inputs, std::uint64_t seed);

/**
 * Removes floor(fraction * 2^N) uniformly chosen seen inputs (Mask stream of
 * `seed`) and renormalizes the rest. Conditionals of surviving inputs are
 * unchanged.
 */
TargetDistribution mask_fraction(const TargetDistribution& target, double fraction, std::uint64_t seed);

/// Per-input optimal angle arccos(sqrt(p(0|b))) in [0, pi/2]; empty for unseen inputs.
std::vector<std::optional<double>> target_angles(const TargetDistribution& target);

/// CSV with header `bitstring,output_bit,weight`. Weights are conditioned per
/// input; inputs with no rows or zero total weight become unseen.
TargetDistribution read_target_csv(std::istream& in);
TargetDistribution load_target_csv(const std::filesystem::path& path);
void write_target_csv(std::ostream& out, const TargetDistribution& target);

std::string target_to_json(const TargetDistribution& target);
TargetDistribution target_from_json(std::string_view json);

}  // namespace qic
