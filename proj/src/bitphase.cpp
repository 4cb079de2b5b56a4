#include "qic/bitphase.hpp"

#include <bit>
#include <vector>

#include "qic/errors.hpp"

namespace qic {

Bitstring::Bitstring(std::uint64_t value, int width) : value_(value), width_(width) {
  if (width < 1 || width > kMaxBitstringWidth) {
    throw DomainError("bitstring width must lie in [1, 30], got " + std::to_string(width));
  }
  if (value >> width) {
    throw DomainError("bitstring value " + std::to_string(value) + " does not fit in " +
                      std::to_string(width) + " bits");
  }
}

Bitstring Bitstring::parse(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxBitstringWidth)) {
    throw DomainError("bitstring literal has invalid length: '" + std::string(bits) + "'");
  }
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw DomainError("bitstring literal contains non-binary digit: '" + std::string(bits) + "'");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return Bitstring(value, static_cast<int>(bits.size()));
}

int Bitstring::bit(int i) const {
  if (i < 1 || i > width_) {
    throw IndexError("bit index " + std::to_string(i) + " outside [1, " + std::to_string(width_) + "]");
  }
  return static_cast<int>((value_ >> (width_ - i)) & 1U);
}

int Bitstring::popcount() const noexcept { return std::popcount(value_); }

std::string Bitstring::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 1; i <= width_; ++i) {
    if ((value_ >> (width_ - i)) & 1U) out[static_cast<std::size_t>(i - 1)] = '1';
  }
  return out;
}

namespace {

// Mask selecting b_1..b_n (the top n bits of the width-bit word).
std::uint64_t top_bits_mask(int width, int n) {
  if (n == 0) return 0;
  const std::uint64_t low = (std::uint64_t{1} << n) - 1;
  return low << (width - n);
}

}  // namespace

int partial_sum(const Bitstring& b, int n) {
  if (n < 0 || n > b.width()) {
    throw IndexError("partial_sum index " + std::to_string(n) + " outside [0, " +
                     std::to_string(b.width()) + "]");
  }
  return std::popcount(b.value() & top_bits_mask(b.width(), n)) & 1;
}

int pair_phase(const Bitstring& b, int n, int m) {
  if (n < 1 || n >= m || m > b.width()) {
    throw IndexError("pair_phase requires 1 <= n < m <= width, got n=" + std::to_string(n) +
                     " m=" + std::to_string(m));
  }
  // sum_{i<=n, b_i=1} (number of set bits in (i, m]) mod 2
  int parity = 0;
  const int ones_to_m = std::popcount(b.value() & top_bits_mask(b.width(), m));
  int ones_to_i = 0;
  for (int i = 1; i <= n; ++i) {
    if (b.bit(i)) {
      ++ones_to_i;
      parity ^= (ones_to_m - ones_to_i) & 1;
    }
  }
  return parity;
}

int exp_phase(const Bitstring& b, std::span<const int> limits) {
  const int order = static_cast<int>(limits.size());
  if (order < 1 || order > b.width()) {
    throw IndexError("exp_phase order " + std::to_string(order) + " outside [1, " +
                     std::to_string(b.width()) + "]");
  }
  int previous = 0;
  for (int limit : limits) {
    if (limit < previous || limit > b.width()) {
      throw IndexError("exp_phase limits must be nondecreasing within [0, width]");
    }
    previous = limit;
  }
  // chains[k]: parity of chains of length k over the positions seen so far.
  std::vector<int> chains(static_cast<std::size_t>(order) + 1, 0);
  chains[0] = 1;
  for (int i = 1; i <= b.width(); ++i) {
    if (!b.bit(i)) continue;
    for (int k = order; k >= 1; --k) {
      if (i <= limits[static_cast<std::size_t>(k - 1)]) {
        chains[static_cast<std::size_t>(k)] ^= chains[static_cast<std::size_t>(k - 1)];
      }
    }
  }
  return chains[static_cast<std::size_t>(order)];
}

}  // namespace qic
