#include "qic/ansatz.hpp"

#include <cmath>
#include <numeric>

#include "qic/errors.hpp"

namespace qic {

struct PhaseTable {
  std::size_t slots = 0;
  std::vector<std::uint8_t> exponents;  // [b * slots + k]
  std::vector<std::uint8_t> flips;      // [b]
};

namespace {

constexpr std::size_t kMaxTableEntries = std::size_t{1} << 28;

std::uint64_t low_bits_mask(int count) {
  return count == 0 ? 0 : ((std::uint64_t{1} << count) - 1);
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Parity of activations of all gates with |controls| == J that precede or
// equal `controls` in lexicographic order.
int lex_prefix_phase(std::span<const int> controls, const Bitstring& b) {
  const int width = b.width();
  const int first = controls.front();
  if (controls.size() == 1) return partial_sum(b, first);
  if (controls.size() == 2) {
    const int second = controls[1];
    const int before = first >= 2 ? pair_phase(b, first - 1, width) : 0;
    return before ^ (b.bit(first) & (partial_sum(b, second) ^ partial_sum(b, first)));
  }
  std::vector<int> limits(controls.size(), width);
  limits.front() = first - 1;
  const int before = exp_phase(b, limits);
  if (!b.bit(first)) return before;
  // Remaining controls range over positions after `first`.
  const Bitstring tail(b.value() & low_bits_mask(width - first), width);
  return before ^ lex_prefix_phase(controls.subspan(1), tail);
}

// Parity of all k-control gates: E_k(N-k+1, ..., N; b).
int full_order_phase(const Bitstring& b, int order) {
  std::vector<int> limits(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) limits[static_cast<std::size_t>(k)] = b.width() - order + 1 + k;
  return exp_phase(b, limits);
}

std::vector<ControlSet> canonical_slots(int n_inputs, std::size_t gate_count) {
  std::vector<ControlSet> slots;
  slots.reserve(gate_count + 1);
  slots.emplace_back();
  for (int order = 1; order <= n_inputs && slots.size() <= gate_count; ++order) {
    ControlSet c(static_cast<std::size_t>(order));
    std::iota(c.begin(), c.end(), 1);
    while (slots.size() <= gate_count) {
      slots.push_back(c);
      // next combination in lexicographic order
      int i = order - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == n_inputs - order + i + 1) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < order; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return slots;
}

std::shared_ptr<const PhaseTable> build_table(int n_inputs, const std::vector<ControlSet>& slots) {
  const std::size_t blocks = std::size_t{1} << n_inputs;
  if (slots.size() > kMaxTableEntries / blocks) {
    throw ResourceError("phase table for N=" + std::to_string(n_inputs) + " with " +
                        std::to_string(slots.size()) + " parameters exceeds the size cap");
  }
  auto table = std::make_shared<PhaseTable>();
  table->slots = slots.size();
  table->exponents.resize(blocks * slots.size());
  table->flips.resize(blocks);

  int max_order = 0;
  for (const auto& s : slots) max_order = std::max(max_order, static_cast<int>(s.size()));

  std::vector<int> lower_orders(static_cast<std::size_t>(max_order) + 1, 0);
  for (std::size_t bv = 0; bv < blocks; ++bv) {
    const Bitstring b(bv, n_inputs);
    // lower_orders[J] = parity of every gate with fewer than J controls.
    for (int order = 1; order < max_order; ++order) {
      lower_orders[static_cast<std::size_t>(order) + 1] =
          lower_orders[static_cast<std::size_t>(order)] ^ full_order_phase(b, order);
    }
    std::uint8_t* row = table->exponents.data() + bv * slots.size();
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto& c = slots[k];
      if (c.empty()) {
        row[k] = 0;
        continue;
      }
      row[k] = static_cast<std::uint8_t>(lower_orders[c.size()] ^ lex_prefix_phase(c, b));
    }
    table->flips[bv] = row[slots.size() - 1];
  }
  return table;
}

}  // namespace

std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Linear: return "linear";
    case AnsatzKind::Quadratic: return "quadratic";
    case AnsatzKind::Exponential: return "exponential";
  }
  return "unknown";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
  if (name == "linear" || name == "lin") return AnsatzKind::Linear;
  if (name == "quadratic" || name == "qua") return AnsatzKind::Quadratic;
  if (name == "exponential" || name == "exp") return AnsatzKind::Exponential;
  throw ConfigError("unknown ansatz kind '" + std::string(name) + "'");
}

std::size_t param_count(AnsatzKind kind, int n_inputs) {
  if (n_inputs < 1) throw DomainError("number of input qubits must be at least 1");
  const auto n = static_cast<std::size_t>(n_inputs);
  switch (kind) {
    case AnsatzKind::Linear: return n + 1;
    case AnsatzKind::Quadratic: return (n * n + n + 2) / 2;
    case AnsatzKind::Exponential:
      if (n_inputs > 62) throw DomainError("exponential parameter count overflows");
      return std::size_t{1} << n;
  }
  throw DomainError("unknown ansatz kind");
}

Ansatz::Ansatz(AnsatzKind kind, int n_inputs, std::size_t gate_count)
    : kind_(kind), n_inputs_(n_inputs) {
  if (n_inputs < 1 || n_inputs > kMaxBitstringWidth) {
    throw DomainError("number of input qubits must lie in [1, 30]");
  }
  slots_ = canonical_slots(n_inputs, gate_count);
  table_ = build_table(n_inputs, slots_);
}

Ansatz Ansatz::linear(int n_inputs) { return make(AnsatzKind::Linear, n_inputs); }
Ansatz Ansatz::quadratic(int n_inputs) { return make(AnsatzKind::Quadratic, n_inputs); }
Ansatz Ansatz::exponential(int n_inputs) { return make(AnsatzKind::Exponential, n_inputs); }

Ansatz Ansatz::make(AnsatzKind kind, int n_inputs) {
  const std::size_t m = qic::param_count(kind, n_inputs);
  return Ansatz(kind, n_inputs, m - 1);
}

Ansatz Ansatz::linear_plus_pairs(int n_inputs, std::size_t pair_gates) {
  if (n_inputs < 1) throw DomainError("number of input qubits must be at least 1");
  const std::size_t pairs = binomial(n_inputs, 2);
  if (pair_gates > pairs) {
    throw DomainError("requested " + std::to_string(pair_gates) + " pair gates but only " +
                      std::to_string(pairs) + " exist for N=" + std::to_string(n_inputs));
  }
  const AnsatzKind kind = pair_gates == 0 ? AnsatzKind::Linear : AnsatzKind::Quadratic;
  return Ansatz(kind, n_inputs, static_cast<std::size_t>(n_inputs) + pair_gates);
}

bool Ansatz::is_complete() const noexcept {
  return slots_.size() == qic::param_count(kind_, n_inputs_);
}

std::string Ansatz::label() const {
  if (is_complete()) return std::string(to_string(kind_));
  return "linear+" + std::to_string(slots_.size() - static_cast<std::size_t>(n_inputs_) - 1);
}

int Ansatz::sign_exponent(std::uint64_t b, std::size_t slot) const {
  return table_->exponents[b * table_->slots + slot];
}

int Ansatz::flip(std::uint64_t b) const { return table_->flips[b]; }

std::span<const std::uint8_t> Ansatz::sign_row(std::uint64_t b) const {
  return {table_->exponents.data() + b * table_->slots, table_->slots};
}

int slot_sign_exponent(const ControlSet& controls, const Bitstring& b) {
  if (controls.empty()) return 0;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (controls[i] < 1 || controls[i] > b.width() || (i > 0 && controls[i] <= controls[i - 1])) {
      throw IndexError("control set must be strictly increasing within [1, width]");
    }
  }
  int parity = 0;
  for (int order = 1; order < static_cast<int>(controls.size()); ++order) {
    parity ^= full_order_phase(b, order);
  }
  return parity ^ lex_prefix_phase(controls, b);
}

void check_dimensions(const Ansatz& ansatz, const ParameterVector& params) {
  if (params.size() != ansatz.param_count()) {
    throw DimensionError("parameter vector has " + std::to_string(params.size()) +
                         " entries, ansatz " + ansatz.label() + " expects " +
                         std::to_string(ansatz.param_count()));
  }
}

BlockRotation block_rotation(const Ansatz& ansatz, const ParameterVector& params, const Bitstring& b) {
  check_dimensions(ansatz, params);
  if (b.width() != ansatz.n_inputs()) {
    throw DimensionError("bitstring width " + std::to_string(b.width()) + " does not match N=" +
                         std::to_string(ansatz.n_inputs()));
  }
  BlockRotation block;
  const auto slots = ansatz.slots();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const int e = slot_sign_exponent(slots[k], b);
    block.angle += e ? -params[k] : params[k];
    block.flip = e;  // the last slot's exponent is the accumulated flip
  }
  return block;
}

std::vector<double> block_angles(const Ansatz& ansatz, const ParameterVector& params) {
  check_dimensions(ansatz, params);
  const std::size_t blocks = ansatz.block_count();
  const std::size_t m = ansatz.param_count();
  std::vector<double> angles(blocks, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto row = ansatz.sign_row(b);
    double theta = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      theta += row[k] ? -params[k] : params[k];
    }
    angles[b] = theta;
  }
  return angles;
}

ConditionalOutput conditional_output(const Ansatz& ansatz, const ParameterVector& params) {
  const std::vector<double> angles = block_angles(ansatz, params);
  ConditionalOutput out;
  out.n_inputs = ansatz.n_inputs();
  out.amps.resize(angles.size());
  for (std::size_t b = 0; b < angles.size(); ++b) {
    const double c = std::cos(angles[b]);
    const double s = std::sin(angles[b]);
    // X R_y(theta)|0> = (sin, cos)
    out.amps[b] = ansatz.flip(b) ? std::array{s, c} : std::array{c, s};
  }
  return out;
}

std::vector<double> statevector(const Ansatz& ansatz, const ParameterVector& params, int max_inputs) {
  if (ansatz.n_inputs() > max_inputs) {
    throw ResourceError("statevector for N=" + std::to_string(ansatz.n_inputs()) +
                        " exceeds the cap of " + std::to_string(max_inputs));
  }
  const ConditionalOutput out = conditional_output(ansatz, params);
  const double scale = 1.0 / std::sqrt(static_cast<double>(ansatz.block_count()));
  std::vector<double> psi(2 * out.amps.size());
  for (std::size_t b = 0; b < out.amps.size(); ++b) {
    psi[2 * b] = out.amps[b][0] * scale;
    psi[2 * b + 1] = out.amps[b][1] * scale;
  }
  return psi;
}

Eigen::MatrixXd sign_matrix(const Ansatz& ansatz) {
  const auto blocks = static_cast<Eigen::Index>(ansatz.block_count());
  const auto m = static_cast<Eigen::Index>(ansatz.param_count());
  Eigen::MatrixXd s(blocks, m);
  for (Eigen::Index b = 0; b < blocks; ++b) {
    for (Eigen::Index k = 0; k < m; ++k) {
      s(b, k) = ansatz.sign_exponent(static_cast<std::uint64_t>(b), static_cast<std::size_t>(k)) ? -1.0 : 1.0;
    }
  }
  return s;
}

}  // namespace qic
