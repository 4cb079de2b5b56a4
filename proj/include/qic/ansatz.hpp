#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qic/bitphase.hpp"

namespace qic {

enum class AnsatzKind { Linear, Quadratic, Exponential };

std::string_view to_string(AnsatzKind kind);
AnsatzKind parse_ansatz_kind(std::string_view name);

/// Number of rotation parameters M for a complete circuit family.
std::size_t param_count(AnsatzKind kind, int n_inputs);

/// Sorted, 1-based input indices controlling one multi-controlled NOT.
/// The empty set labels the leading rotation alpha_0.
using ControlSet = std::vector<int>;

/// Rotation angles in radians, one per ansatz slot.
class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(std::size_t size, double fill = 0.0) : values_(size, fill) {}
  explicit ParameterVector(std::vector<double> values) : values_(std::move(values)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  [[nodiscard]] const std::vector<double>& vector() const noexcept { return values_; }

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

 private:
  std::vector<double> values_;
};

/// The 2x2 block X^flip * R_y(angle) acting on the target qubit.
struct BlockRotation {
  int flip = 0;
  double angle = 0.0;
};

/// Target-qubit amplitudes (amp0, amp1) for every input bitstring b.
struct ConditionalOutput {
  int n_inputs = 0;
  std::vector<std::array<double, 2>> amps;

  [[nodiscard]] double prob(std::uint64_t b, int a) const {
    const double v = amps[b][static_cast<std::size_t>(a)];
    return v * v;
  }
};

struct PhaseTable;

/**
 * One member of the imputation-circuit family on N input qubits.
 *
 * The circuit is R_y(alpha_0) followed by multi-controlled NOT gates on the
 * target, each followed by its own R_y rotation. Gates are ordered by
 * number of controls and then lexicographically, so every ansatz is a
 * prefix of the full exponential gate list:
 *
 *   linear      : alpha_0, (1), ..., (N)
 *   quadratic   : linear + (1,2), (1,3), ..., (N-1,N)
 *   exponential : quadratic + all triples + ... + (1,...,N)
 *
 * Slot k of the parameter vector belongs to the rotation after gate k.
 * Sign exponents and flips of every block are precomputed from the parity
 * phase kernels at construction; the object is immutable and cheap to copy.
 */
class Ansatz {
 public:
  static Ansatz linear(int n_inputs);
  static Ansatz quadratic(int n_inputs);
  static Ansatz exponential(int n_inputs);
  static Ansatz make(AnsatzKind kind, int n_inputs);

  /// Linear circuit plus the first `pair_gates` two-control gates in
  /// lexicographic order. pair_gates = N(N-1)/2 is the quadratic ansatz.
  static Ansatz linear_plus_pairs(int n_inputs, std::size_t pair_gates);

  [[nodiscard]] AnsatzKind kind() const noexcept { return kind_; }
  [[nodiscard]] int n_inputs() const noexcept { return n_inputs_; }
  [[nodiscard]] std::size_t param_count() const noexcept { return slots_.size(); }
  [[nodiscard]] std::size_t block_count() const noexcept { return std::size_t{1} << n_inputs_; }
  [[nodiscard]] std::span<const ControlSet> slots() const noexcept { return slots_; }

  /// True unless built by linear_plus_pairs with a partial pair set.
  [[nodiscard]] bool is_complete() const noexcept;

  /// "linear", "quadratic", "exponential" or "linear+k" for partial sweeps.
  [[nodiscard]] std::string label() const;

  /// Cached sign exponent of slot k in block b (angle coefficient is (-1)^e).
  [[nodiscard]] int sign_exponent(std::uint64_t b, std::size_t slot) const;
  /// Cached X flip of block b.
  [[nodiscard]] int flip(std::uint64_t b) const;
  /// All param_count() sign exponents of block b.
  [[nodiscard]] std::span<const std::uint8_t> sign_row(std::uint64_t b) const;

 private:
  Ansatz(AnsatzKind kind, int n_inputs, std::size_t gate_count);

  AnsatzKind kind_;
  int n_inputs_;
  std::vector<ControlSet> slots_;
  std::shared_ptr<const PhaseTable> table_;
};

/// Sign exponent of a rotation slot for input b, computed from the parity
/// kernels: parity of all gate activations up to and including the gate
/// that precedes the slot. Valid for any slot of the canonical gate order.
int slot_sign_exponent(const ControlSet& controls, const Bitstring& b);

/// Block for input b, evaluated directly from the parity kernels.
BlockRotation block_rotation(const Ansatz& ansatz, const ParameterVector& params, const Bitstring& b);

/// Effective angle theta_b for every block, using the cached table.
std::vector<double> block_angles(const Ansatz& ansatz, const ParameterVector& params);

ConditionalOutput conditional_output(const Ansatz& ansatz, const ParameterVector& params);

/// Default cap on N for full statevectors.
inline constexpr int kStatevectorMaxInputs = 20;

/**
 * Amplitudes of the full (N+1)-qubit state after a Hadamard-prepared input
 * register. Index (b << 1) | a holds amp_a(b) / sqrt(2^N).
 */
std::vector<double> statevector(const Ansatz& ansatz, const ParameterVector& params,
                                int max_inputs = kStatevectorMaxInputs);

/// 2^N x M matrix of coefficients (+1/-1) mapping parameters to block angles.
Eigen::MatrixXd sign_matrix(const Ansatz& ansatz);

/// Throws DimensionError unless params has exactly ansatz.param_count() entries.
void check_dimensions(const Ansatz& ansatz, const ParameterVector& params);

}  // namespace qic
