#pragma once

#include <vector>

#include "qic/ansatz.hpp"

namespace qic {

inline constexpr int kOracleMaxInputs = 10;

/**
 * Reference simulation that applies the circuit gate by gate to a dense
 * (N+1)-qubit real state vector: Hadamards on every input qubit, then
 * R_y(alpha_0), then each multi-controlled NOT followed by its rotation.
 *
 * The state index is (b << 1) | a with b_1 the most significant input bit,
 * matching statevector(). No parity-phase algebra is used here.
 */
std::vector<double> gate_level_oracle(const Ansatz& ansatz, const ParameterVector& params);

}  // namespace qic
