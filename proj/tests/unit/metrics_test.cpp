#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_print.hpp"
#include "topoconf/complex.hpp"
#include "topoconf/density.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/metrics.hpp"
#include "topoconf/rips_persistence.hpp"

namespace {

using namespace topoconf;

// Minimum over all bijections of the augmented sets A + diag(B), B + diag(A)
// of the largest cost. Finite pairs only.
double brute_bottleneck(const std::vector<PersistencePair>& a,
                        const std::vector<PersistencePair>& b) {
  const std::size_t n = a.size() + b.size();
  auto cost = [&](std::size_t i, std::size_t j) {
    const bool ia = i < a.size(), jb = j < b.size();
    if (ia && jb) return std::max(std::abs(a[i].birth - b[j].birth),
                                  std::abs(a[i].death - b[j].death));
    if (ia) return a[i].persistence() / 2;
    if (jb) return b[j].persistence() / 2;
    return 0.0;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, cost(i, perm[i]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<PersistencePair> random_pairs(std::mt19937_64& rng, std::size_t k, int dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PersistencePair> out;
  for (std::size_t i = 0; i < k; ++i) {
    const double b = u(rng);
    out.push_back({dim, b, b + u(rng)});
  }
  return out;
}

TEST(Bottleneck, Examples) {
  const PersistencePair p{1, 0.0, 2.0};
  EXPECT_EQ(linf_cost(p, {1, 0.5, 1.5}), 0.5);
  EXPECT_EQ(diagonal_distance(p), 1.0);
  EXPECT_EQ(bottleneck({{p}}, {{p}}, 1), 0.0);
  EXPECT_EQ(bottleneck({{p}}, {}, 1), 1.0);
  EXPECT_NEAR(bottleneck({{p}}, {{{1, 0.1, 2.2}}}, 1), 0.2, 1e-12);
  // Two near-diagonal points: cheaper to drop both than to pair them.
  EXPECT_NEAR(bottleneck({{{1, 0, 0.2}}}, {{{1, 5, 5.2}}}, 1), 0.1, 1e-12);
  // Other dimensions are ignored.
  EXPECT_EQ(bottleneck({{p}}, {}, 0), 0.0);
}

TEST(Bottleneck, EssentialPoints) {
  const PersistenceDiagram a{{{0, 0, kInfinity}, {0, 2, kInfinity}}};
  const PersistenceDiagram b{{{0, 0.5, kInfinity}, {0, 1.75, kInfinity}}};
  EXPECT_EQ(bottleneck(a, b, 0), 0.5);
  EXPECT_EQ(bottleneck(a, {{{0, 0, kInfinity}}}, 0), kInfinity);
}

TEST(Bottleneck, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_pairs(rng, trial % 4, 1);
    const auto b = random_pairs(rng, (trial / 4) % 4, 1);
    const double fast = bottleneck({a}, {b}, 1);
    EXPECT_EQ(fast, brute_bottleneck(a, b)) << "trial " << trial;
    EXPECT_EQ(fast, bottleneck({b}, {a}, 1));
  }
}

TEST(Bottleneck, TriangleInequality) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const PersistenceDiagram a{random_pairs(rng, 6, 0)}, b{random_pairs(rng, 5, 0)},
        c{random_pairs(rng, 7, 0)};
    EXPECT_LE(bottleneck(a, b, 0), bottleneck(a, c, 0) + bottleneck(c, b, 0) + 1e-12);
  }
}

TEST(Bottleneck, RipsStabilityUnderHausdorffPerturbation) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 0.03);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> rows(30), moved(30);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double t = 2 * M_PI * u(rng);
      rows[i] = {std::cos(t) + z(rng), std::sin(t) + z(rng)};
      moved[i] = {rows[i][0] + z(rng), rows[i][1] + z(rng)};
    }
    const auto x = PointCloud::from_rows(rows), y = PointCloud::from_rows(moved);
    const auto dx = rips_persistence(x, INFINITY, 2), dy = rips_persistence(y, INFINITY, 2);
    const double h = hausdorff(x, y);
    for (int p : {0, 1}) EXPECT_LE(bottleneck(dx, dy, p), h + 1e-12);
  }
}

TEST(Bottleneck, DensityStabilityUnderSupNorm) {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> z;
  const GridGeometry g({{-1, 1, 12}, {-1, 1, 12}});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> f(g.vertex_count()), h(g.vertex_count());
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = 2 + z(rng);
      h[i] = f[i] + 0.2 * z(rng);
    }
    const GridField ff(g, f), hh(g, h);
    const auto df = density_diagram(ff), dh = density_diagram(hh);
    for (int p : {0, 1}) EXPECT_LE(bottleneck(df, dh, p), sup_distance(ff, hh) + 1e-12);
  }
}

TEST(SupDistance, ExamplesAndErrors) {
  const GridGeometry g({{0, 1, 3}});
  EXPECT_EQ(sup_distance(GridField(g, {1, 2, 3}), GridField(g, {1, 2.5, 2})), 1.0);
  EXPECT_THROW(sup_distance(GridField(g, {1, 2, 3}),
                            GridField(GridGeometry({{0, 2, 3}}), {1, 2, 3})),
               ConfigError);
}

TEST(Bottleneck, ReferenceCases) {
  EXPECT_EQ(bottleneck({{{0, 0, 2}}}, {}, 0), 1.0);
  EXPECT_EQ(bottleneck({{{0, 0, 4}}}, {{{0, 1, 5}}}, 0), 1.0);
  const GridGeometry g({{0, 1, 3}});
  EXPECT_EQ(sup_distance(GridField(g, {0, 1, 2}), GridField(g, {0.5, 0.5, 0.5})), 1.5);
  EXPECT_EQ(sup_distance(GridField(g, {1, 1, 1}), GridField(g, {0, 0, 0})), 1.0);
}
}  // namespace
