#include "topoconf/random.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <limits>
#include <numeric>

namespace topoconf {

Rng substream(std::uint64_t seed, StreamTag tag, std::uint64_t stream) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) {
    return static_cast<std::uint32_t>(v >> 32);
  };
  const auto t = static_cast<std::uint64_t>(tag);
  std::seed_seq seq{lo(seed), hi(seed), lo(t), hi(t), lo(stream), hi(stream)};
  return Rng(seq);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % range);
}

double standard_normal(Rng& rng) {
  static const boost::math::normal_distribution<double> unit;
  return boost::math::quantile(unit, uniform_open01(rng));
}

std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n,
                                                    std::size_t count) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + uniform_index(rng, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<std::size_t> bootstrap_indices(Rng& rng, std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (auto& v : idx) v = uniform_index(rng, n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  return sample_without_replacement(rng, n, n);
}

}  // namespace topoconf
