#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace qic {

/// Maximum supported input width.
inline constexpr int kMaxBitstringWidth = 30;

/**
 * An N-bit input configuration.
 *
 * Bit b_1 is the most significant bit of the N-bit representation of
 * `value()`, so the bitstring "101" has b_1 = 1, b_2 = 0, b_3 = 1. Every
 * phase kernel and every ansatz inherits this convention.
 */
class Bitstring {
 public:
  Bitstring(std::uint64_t value, int width);

  /// Parses a string of '0'/'1' characters, leftmost character is b_1.
  static Bitstring parse(std::string_view bits);

  [[nodiscard]] std::uint64_t value() const noexcept { return value_; }
  [[nodiscard]] int width() const noexcept { return width_; }

  /// b_i for 1 <= i <= width.
  [[nodiscard]] int bit(int i) const;

  [[nodiscard]] int popcount() const noexcept;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Bitstring&, const Bitstring&) = default;

 private:
  std::uint64_t value_;
  int width_;
};

/// S_n(b) = b_1 + ... + b_n mod 2, with S_0 = 0.
int partial_sum(const Bitstring& b, int n);

/// Q_{n,m}(b) = sum_{i<=n} sum_{i<j<=m} b_i b_j mod 2, for 1 <= n < m <= width.
int pair_phase(const Bitstring& b, int n, int m);

/**
 * E_J(n_1, ..., n_J; b): parity of the number of index chains
 * a_1 < a_2 < ... < a_J with a_k <= n_k and b_{a_k} = 1 for every k.
 *
 * Limits must be nondecreasing with 0 <= n_k <= width and J <= width. A
 * zero first limit gives an empty sum. E_1 coincides with partial_sum and
 * E_2 with pair_phase.
 */
int exp_phase(const Bitstring& b, std::span<const int> limits);

}  // namespace qic
