#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qic/ansatz.hpp"
#include "qic/targets.hpp"

namespace qic {

enum class Support { Full, Seen, Unseen };

std::string_view to_string(Support support);

struct DistanceReport {
  double hellinger = 0.0;
  double bhattacharyya = 1.0;
  Support support = Support::Full;
};

/// Inputs whose total differs from one by less than this are renormalized;
/// larger deviations are rejected.
inline constexpr double kNormalizationTolerance = 1e-9;

/**
 * Hellinger distance sqrt(1 - sum_x sqrt(p_x q_x)) between two distributions
 * of equal length. Evaluated as sqrt(0.5 * sum (sqrt p - sqrt q)^2), which is
 * the same quantity for normalized inputs but stays exact near zero.
 */
DistanceReport hellinger(std::span<const double> p, std::span<const double> q, Support support = Support::Full);

/// Circuit output joint p(b, a) = amp_a(b)^2 / 2^N, index (b << 1) | a.
std::vector<double> output_joint(const ConditionalOutput& out);

/// Mean over seen inputs of 0.5 |u_b - v_b|^2 (aligned) and 0.5 |u_b + v_b|^2
/// (anti_aligned), where u_b = (sqrt p(0|b), sqrt p(1|b)) and v_b are the
/// circuit amplitudes. aligned = 1 - F and anti_aligned = 1 + F for the
/// seen-renormalized state overlap F.
struct OverlapDefects {
  double aligned = 0.0;
  double anti_aligned = 0.0;
};

OverlapDefects overlap_defects(const TargetDistribution& target, const ConditionalOutput& out);

/// Signed state overlap F over the seen inputs.
double state_overlap(const TargetDistribution& target, const ConditionalOutput& out);

/// sqrt(1 - |F|): distance between the target state and the circuit state.
double state_distance(const TargetDistribution& target, const ConditionalOutput& out);

/// sqrt(1 - M / 2^N); exceeding it after optimization signals optimizer failure.
double worst_case_bound(std::size_t param_count, int n_inputs);

/**
 * Hellinger distance after restricting both the reference joint and the
 * circuit joint to the inputs flagged in `inputs`, each renormalized to one.
 */
DistanceReport restricted_distance(const TargetDistribution& reference, const std::vector<bool>& inputs,
                                   const ConditionalOutput& out, Support label);

/// Seen/unseen relative to the target's own mask; Full compares the joints.
DistanceReport restricted_distance(const TargetDistribution& target, const ConditionalOutput& out, Support support);

}  // namespace qic
