#pragma once

#include <cstdint>
#include <random>

namespace qic {

/// Independent random streams derived from one user seed. Masking,
/// optimizer initialization, output sampling and Monte-Carlo draws never
/// share a stream, so changing one experiment stage leaves the others intact.
enum class Stream : std::uint32_t {
  Target = 1,
  Mask = 2,
  Init = 3,
  Sampling = 4,
  MonteCarlo = 5,
};

/**
 * Portable seeded generator.
 *
 * The engine is std::mt19937_64 seeded through std::seed_seq with the words
 * (seed_lo, seed_hi, stream, index_lo, index_hi); both algorithms are fully
 * specified by the standard, and all derived draws below use integer
 * arithmetic only, so sequences are identical across platforms. `index`
 * splits a stream further, e.g. one substream per restart or per draw.
 */
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), unbiased; n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qic

namespace qic {

/// Deterministically combines a seed with cell coordinates (SplitMix64 finalizer
/// chained over the words) to give independent per-cell seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace qic
