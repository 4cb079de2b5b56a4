#include "qic/rng.hpp"

#include <set>

#include <gtest/gtest.h>

#include "qic/errors.hpp"

using qic::Rng;
using qic::Stream;

TEST(Rng, Deterministic) {
  Rng a(5, Stream::Init, 2);
  Rng b(5, Stream::Init, 2);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsAndIndicesDiffer) {
  EXPECT_NE(Rng(5, Stream::Init).next_u64(), Rng(5, Stream::Mask).next_u64());
  EXPECT_NE(Rng(5, Stream::Init, 0).next_u64(), Rng(5, Stream::Init, 1).next_u64());
  EXPECT_NE(Rng(5, Stream::Init).next_u64(), Rng(6, Stream::Init).next_u64());
  EXPECT_NE(Rng(1ULL << 40, Stream::Init).next_u64(), Rng(0, Stream::Init).next_u64());
}

// std::mt19937_64 and std::seed_seq are fully specified, so these values hold
// on every conforming platform.
TEST(Rng, PinnedValues) {
  EXPECT_EQ(Rng(0, Stream::Target, 0).next_u64(), 1166802843231618327ULL);
  Rng r(12345, Stream::Mask, 7);
  EXPECT_EQ(r.next_u64(), 15542300313268451876ULL);
  EXPECT_EQ(r.uniform(), 0.52192367856498412);
  EXPECT_EQ(r.below(1000), 638u);
  EXPECT_EQ(qic::mix_seed(1, 2, 3, 4), 15374388949593934587ULL);
}

TEST(Rng, UniformRange) {
  Rng r(1, Stream::MonteCarlo);
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_LT(lo, 0.001);
  EXPECT_GT(hi, 0.999);
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
}

TEST(Rng, BelowCoversRange) {
  Rng r(2, Stream::Sampling);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(r.below(0), qic::DomainError);
}

TEST(MixSeed, SensitiveToEveryWord) {
  const auto base = qic::mix_seed(1, 2, 3, 4);
  EXPECT_EQ(base, qic::mix_seed(1, 2, 3, 4));
  EXPECT_NE(base, qic::mix_seed(0, 2, 3, 4));
  EXPECT_NE(base, qic::mix_seed(1, 3, 3, 4));
  EXPECT_NE(base, qic::mix_seed(1, 2, 4, 4));
  EXPECT_NE(base, qic::mix_seed(1, 2, 3, 5));
  EXPECT_NE(qic::mix_seed(1, 2, 3), qic::mix_seed(1, 3, 2));
}
