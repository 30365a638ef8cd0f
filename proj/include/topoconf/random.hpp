#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace topoconf {

using Rng = std::mt19937_64;

/// Stream tags keep independent consumers of one user seed apart.
enum class StreamTag : std::uint64_t {
  kGenerate = 1,
  kSubsample = 2,
  kSplit = 3,
  kBootstrap = 4,
  kOutliers = 5,
  kCountBootstrap = 6,
};

/// Deterministic generator for replicate `stream` of `tag` under `seed`.
/// Depends only on its arguments, so replicates can run in any order.
Rng substream(std::uint64_t seed, StreamTag tag, std::uint64_t stream = 0);

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Uniform on the open interval (0, 1); safe to feed to inverse CDFs.
double uniform_open01(Rng& rng);

/// Uniform integer in [0, n); n > 0. Unbiased (rejection sampling).
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Standard normal draw by inverse CDF.
double standard_normal(Rng& rng);

/// `count` distinct indices from [0, n), in draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n,
                                                    std::size_t count);

/// n indices drawn with replacement from [0, n), sorted ascending.
std::vector<std::size_t> bootstrap_indices(Rng& rng, std::size_t n);

/// Uniformly random permutation of [0, n).
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

}  // namespace topoconf
