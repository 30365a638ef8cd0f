#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "topoconf/random.hpp"

namespace {

using namespace topoconf;

TEST(Random, SubstreamsAreDeterministic) {
  Rng a = substream(42, StreamTag::kBootstrap, 7);
  Rng b = substream(42, StreamTag::kBootstrap, 7);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
}

TEST(Random, SubstreamsDifferByTagAndStream) {
  const auto first = [](Rng r) { return r(); };
  EXPECT_NE(first(substream(1, StreamTag::kBootstrap, 0)), first(substream(1, StreamTag::kBootstrap, 1)));
  EXPECT_NE(first(substream(1, StreamTag::kBootstrap, 0)), first(substream(1, StreamTag::kSubsample, 0)));
  EXPECT_NE(first(substream(1, StreamTag::kBootstrap, 0)), first(substream(2, StreamTag::kBootstrap, 0)));
}

TEST(Random, UniformRanges) {
  Rng r = substream(3, StreamTag::kGenerate);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(r);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = uniform_open01(r);
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    ASSERT_LT(uniform_index(r, 7), 7u);
  }
}

TEST(Random, StandardNormalMoments) {
  Rng r = substream(5, StreamTag::kGenerate);
  double s = 0.0, s2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(r);
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Random, SampleWithoutReplacementIsDistinct) {
  Rng r = substream(9, StreamTag::kSubsample);
  const auto idx = sample_without_replacement(r, 50, 20);
  ASSERT_EQ(idx.size(), 20u);
  const std::set<std::size_t> s(idx.begin(), idx.end());
  EXPECT_EQ(s.size(), 20u);
  for (auto i : idx) EXPECT_LT(i, 50u);
}

TEST(Random, PermutationAndBootstrap) {
  Rng r = substream(9, StreamTag::kSplit);
  auto p = random_permutation(r, 30);
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(p[i], i);
  Rng q = substream(9, StreamTag::kBootstrap);
  const auto b = bootstrap_indices(q, 30);
  ASSERT_EQ(b.size(), 30u);
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
}

}  // namespace
