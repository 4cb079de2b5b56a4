#include "qic/gate_oracle.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "qic/errors.hpp"

namespace qic {

namespace {

using Matrix2 = std::array<std::array<double, 2>, 2>;

// Applies a 2x2 matrix to `target_bit`, restricted to basis states where
// every bit of `control_mask` is set.
void apply_controlled(std::vector<double>& state, std::uint64_t target_bit, std::uint64_t control_mask,
                      const Matrix2& u) {
  for (std::uint64_t i = 0; i < state.size(); ++i) {
    if (i & target_bit) continue;
    if ((i & control_mask) != control_mask) continue;
    const std::uint64_t j = i | target_bit;
    const double x0 = state[i];
    const double x1 = state[j];
    state[i] = u[0][0] * x0 + u[0][1] * x1;
    state[j] = u[1][0] * x0 + u[1][1] * x1;
  }
}

Matrix2 ry(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {{{c, -s}, {s, c}}};
}

constexpr Matrix2 kPauliX{{{0.0, 1.0}, {1.0, 0.0}}};
constexpr Matrix2 kHadamard{{{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
                             {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}}};

}  // namespace

std::vector<double> gate_level_oracle(const Ansatz& ansatz, const ParameterVector& params) {
  const int n = ansatz.n_inputs();
  if (n > kOracleMaxInputs) {
    throw ResourceError("gate-level oracle is limited to N <= " + std::to_string(kOracleMaxInputs));
  }
  check_dimensions(ansatz, params);

  // Input qubit i (1-based) lives at bit position n - i + 1; the target is bit 0.
  auto input_bit = [n](int i) { return std::uint64_t{1} << (n - i + 1); };
  constexpr std::uint64_t target = 1;

  std::vector<double> state(std::size_t{1} << (n + 1), 0.0);
  state[0] = 1.0;
  for (int i = 1; i <= n; ++i) apply_controlled(state, input_bit(i), 0, kHadamard);

  const auto slots = ansatz.slots();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k].empty()) {
      std::uint64_t mask = 0;
      for (int c : slots[k]) mask |= input_bit(c);
      apply_controlled(state, target, mask, kPauliX);
    }
    apply_controlled(state, target, 0, ry(params[k]));
  }
  return state;
}

}  // namespace qic
