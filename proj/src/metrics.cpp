#include "qic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qic/errors.hpp"

namespace qic {

namespace {

double checked_total(std::span<const double> p, const char* name) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DomainError(std::string(name) + " contains a negative or non-finite probability");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw DomainError(std::string(name) + " is not normalized (sum = " + std::to_string(total) + ")");
  }
  return total;
}

void check_output(const TargetDistribution& target, const ConditionalOutput& out) {
  if (out.n_inputs != target.n_inputs() || out.amps.size() != target.input_count()) {
    throw DomainError("circuit output has N=" + std::to_string(out.n_inputs) + ", target has N=" +
                      std::to_string(target.n_inputs()));
  }
}

}  // namespace

std::string_view to_string(Support support) {
  switch (support) {
    case Support::Full: return "full";
    case Support::Seen: return "seen";
    case Support::Unseen: return "unseen";
  }
  return "unknown";
}

DistanceReport hellinger(std::span<const double> p, std::span<const double> q, Support support) {
  if (p.size() != q.size() || p.empty()) {
    throw DomainError("hellinger requires two non-empty distributions of equal length");
  }
  const double sp = checked_total(p, "first distribution");
  const double sq = checked_total(q, "second distribution");
  double half_sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(p[i] / sp) - std::sqrt(q[i] / sq);
    half_sq += d * d;
  }
  half_sq = std::clamp(0.5 * half_sq, 0.0, 1.0);
  return {std::sqrt(half_sq), 1.0 - half_sq, support};
}

std::vector<double> output_joint(const ConditionalOutput& out) {
  const double weight = 1.0 / static_cast<double>(out.amps.size());
  std::vector<double> joint(2 * out.amps.size());
  for (std::size_t b = 0; b < out.amps.size(); ++b) {
    joint[2 * b] = out.amps[b][0] * out.amps[b][0] * weight;
    joint[2 * b + 1] = out.amps[b][1] * out.amps[b][1] * weight;
  }
  return joint;
}

OverlapDefects overlap_defects(const TargetDistribution& target, const ConditionalOutput& out) {
  check_output(target, out);
  OverlapDefects d;
  const auto p0 = target.conditional_zero();
  for (std::size_t b = 0; b < out.amps.size(); ++b) {
    if (!target.seen(b)) continue;
    const double u0 = std::sqrt(p0[b]);
    const double u1 = std::sqrt(1.0 - p0[b]);
    const double m0 = u0 - out.amps[b][0];
    const double m1 = u1 - out.amps[b][1];
    const double s0 = u0 + out.amps[b][0];
    const double s1 = u1 + out.amps[b][1];
    d.aligned += m0 * m0 + m1 * m1;
    d.anti_aligned += s0 * s0 + s1 * s1;
  }
  const double scale = 0.5 / static_cast<double>(target.seen_count());
  d.aligned *= scale;
  d.anti_aligned *= scale;
  return d;
}

double state_overlap(const TargetDistribution& target, const ConditionalOutput& out) {
  check_output(target, out);
  const auto p0 = target.conditional_zero();
  double f = 0.0;
  for (std::size_t b = 0; b < out.amps.size(); ++b) {
    if (!target.seen(b)) continue;
    f += std::sqrt(p0[b]) * out.amps[b][0] + std::sqrt(1.0 - p0[b]) * out.amps[b][1];
  }
  return f / static_cast<double>(target.seen_count());
}

double state_distance(const TargetDistribution& target, const ConditionalOutput& out) {
  const OverlapDefects d = overlap_defects(target, out);
  return std::sqrt(std::clamp(std::min(d.aligned, d.anti_aligned), 0.0, 1.0));
}

double worst_case_bound(std::size_t param_count, int n_inputs) {
  if (n_inputs < 1 || n_inputs > 62) throw DomainError("worst_case_bound requires 1 <= N <= 62");
  const double blocks = std::ldexp(1.0, n_inputs);
  if (static_cast<double>(param_count) > blocks) {
    throw DomainError("parameter count " + std::to_string(param_count) + " exceeds 2^N");
  }
  return std::sqrt(1.0 - static_cast<double>(param_count) / blocks);
}

DistanceReport restricted_distance(const TargetDistribution& reference, const std::vector<bool>& inputs,
                                   const ConditionalOutput& out, Support label) {
  check_output(reference, out);
  if (inputs.size() != reference.input_count()) throw DomainError("input selection has the wrong length");
  std::vector<double> p;
  std::vector<double> q;
  for (std::size_t b = 0; b < inputs.size(); ++b) {
    if (!inputs[b]) continue;
    p.push_back(reference.joint(b, 0));
    p.push_back(reference.joint(b, 1));
    q.push_back(out.amps[b][0] * out.amps[b][0]);
    q.push_back(out.amps[b][1] * out.amps[b][1]);
  }
  if (p.empty()) throw DomainError("restricted distance over an empty support");
  const double sp = std::accumulate(p.begin(), p.end(), 0.0);
  const double sq = std::accumulate(q.begin(), q.end(), 0.0);
  if (!(sp > 0.0)) throw DomainError("reference distribution has no mass on the selected support");
  for (double& x : p) x /= sp;
  for (double& x : q) x /= sq;
  return hellinger(p, q, label);
}

DistanceReport restricted_distance(const TargetDistribution& target, const ConditionalOutput& out, Support support) {
  if (support == Support::Full) {
    const auto joint = output_joint(out);
    check_output(target, out);
    return hellinger(target.probs(), joint, Support::Full);
  }
  std::vector<bool> inputs = target.seen_mask();
  if (support == Support::Unseen) inputs.flip();
  return restricted_distance(target, inputs, out, support);
}

}  // namespace qic
