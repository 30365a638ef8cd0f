#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "test_print.hpp"
#include "topoconf/datasets.hpp"
#include "topoconf/density.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/random.hpp"

namespace {

using namespace topoconf;

const KernelKind kAllKinds[] = {KernelKind::kGaussian, KernelKind::kEpanechnikovSmoothed,
                                KernelKind::kTriangular};

// Surface area of the unit sphere in R^D for D = 1, 2, 3.
double sphere(std::size_t d) { return d == 1 ? 2.0 : d == 2 ? 2 * std::numbers::pi : 4 * std::numbers::pi; }

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> z;
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  for (auto& r : rows)
    for (auto& v : r) v = z(rng);
  return PointCloud::from_rows(rows);
}

TEST(Kernel, IntegratesToOneAndLipschitzIsSharp) {
  for (auto kind : kAllKinds) {
    for (std::size_t d : {1, 2, 3}) {
      const auto k = KernelSpec::make(kind, 1.0, d);
      EXPECT_EQ(k.profile(0), k.k0);
      // Radial midpoint rule.
      const int steps = 200000;
      const double rmax = 10.0, dr = rmax / steps;
      double mass = 0, slope = 0;
      for (int i = 0; i < steps; ++i) {
        const double r = (i + 0.5) * dr;
        mass += sphere(d) * std::pow(r, d - 1.0) * k.profile(r) * dr;
        slope = std::max(slope, std::abs(k.profile(r + dr / 2) - k.profile(r - dr / 2)) / dr);
      }
      EXPECT_NEAR(mass, 1.0, 1e-6) << kernel_kind_name(kind) << " D=" << d;
      EXPECT_NEAR(slope, k.lipschitz, 1e-3 * k.lipschitz) << kernel_kind_name(kind);
    }
  }
  EXPECT_THROW(KernelSpec::make(KernelKind::kGaussian, 0.0, 2), ConfigError);
  EXPECT_THROW(KernelSpec::make(KernelKind::kGaussian, 1.0, 0), ConfigError);
}

TEST(Kernel, NamesRoundTrip) {
  for (auto kind : kAllKinds) EXPECT_EQ(parse_kernel_kind(kernel_kind_name(kind)), kind);
  EXPECT_THROW(parse_kernel_kind("boxcar"), ConfigError);
}

TEST(Kde, SeparablePathMatchesDirect) {
  std::mt19937_64 rng(41);
  for (std::size_t d : {1, 2, 3}) {
    const auto cloud = random_cloud(rng, 50, d);
    const auto k = KernelSpec::make(KernelKind::kGaussian, 0.4, d);
    const auto g = default_density_grid(cloud, k, d == 3 ? 9 : 33);
    const auto fast = kde(cloud, k, g), slow = kde_direct(cloud, k, g);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      EXPECT_NEAR(fast.values[i], slow.values[i], 1e-12 * (1 + slow.values[i]));
    }
  }
}

TEST(Kde, IntegratesToOneOnWideGrid) {
  std::mt19937_64 rng(42);
  const auto cloud = random_cloud(rng, 30, 2);
  for (auto kind : kAllKinds) {
    const auto k = KernelSpec::make(kind, 0.5, 2);
    const auto g = default_density_grid(cloud, k, 161);
    const auto f = kde(cloud, k, g);
    const double cell = (g.axis(0).hi - g.axis(0).lo) / 160 * (g.axis(1).hi - g.axis(1).lo) / 160;
    double sum = 0;
    for (double v : f.values) sum += v * cell;
    EXPECT_NEAR(sum, 1.0, 0.01) << kernel_kind_name(kind);
  }
}

TEST(Kde, ResamplerMatchesDirectEstimate) {
  std::mt19937_64 rng(43);
  const auto cloud = random_cloud(rng, 40, 2);
  for (auto kind : kAllKinds) {
    const auto k = KernelSpec::make(kind, 0.6, 2);
    const auto g = default_density_grid(cloud, k, 20);
    const KdeResampler r(cloud, k, g);
    const auto full = kde_direct(cloud, k, g);
    for (std::size_t i = 0; i < full.size(); ++i) {
      EXPECT_NEAR(r.full().values[i], full.values[i], 1e-12);
    }
    const std::vector<std::size_t> idx{0, 0, 3, 7, 7, 7, 39};
    const auto sub = kde_direct(cloud.subset(idx), k, g);
    const auto fast = r.resample(idx);
    for (std::size_t i = 0; i < sub.size(); ++i) EXPECT_NEAR(fast.values[i], sub.values[i], 1e-12);
    EXPECT_THROW(r.resample({}), ConfigError);
  }
}

TEST(Hoeffding, SolvesTheEquation) {
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.3, 2);
  for (double n : {100.0, 1000.0, 1e5}) {
    const double delta = hoeffding_band(n, k, 2.0, 0.05);
    EXPECT_NEAR(hoeffding_lhs(n, k, 2.0, delta), 0.05, 1e-9);
    EXPECT_LT(hoeffding_band(4 * n, k, 2.0, 0.05), delta);
    EXPECT_GT(hoeffding_band(n, k, 2.0, 0.01), delta);
  }
  EXPECT_THROW(hoeffding_band(100, k, 2.0, 1.5), ConfigError);
}

TEST(GridBand, FormulaAndVacuousCase) {
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.5, 2);
  const double expected = std::pow(k.k0 / 0.5, 2) * std::sqrt(std::log(2 * 4096 / 0.05) / 2000);
  EXPECT_DOUBLE_EQ(grid_band(1000, k, 4096, 0.05), expected);
  EXPECT_EQ(grid_band(1000, k, 1, 2.0), 0.0);
  EXPECT_THROW(grid_band(1000, k, 0.5, 0.05), ConfigError);
}

TEST(UpperQuantile, MatchesDefinition) {
  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i + 1;
  EXPECT_EQ(upper_quantile(v, 0.05), 95.0);
  EXPECT_EQ(upper_quantile({1, 1, 1, 2}, 0.3), 1.0);
  EXPECT_EQ(upper_quantile({3.0}, 0.05), 3.0);
  EXPECT_THROW(upper_quantile({}, 0.05), ConfigError);
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> u(0, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(1 + trial % 30);
    for (auto& x : s) x = u(rng);
    const double alpha = 0.01 * (1 + trial % 40);
    const double t = upper_quantile(s, alpha);
    auto above = [&](double x) { return std::count_if(s.begin(), s.end(), [&](double y) { return y > x; }); };
    EXPECT_LE(above(t), alpha * s.size());
    for (double x : s)
      if (x < t) EXPECT_GT(above(x), alpha * s.size());
  }
}

TEST(BootstrapBand, DeterministicWithConsistentDiagnostics) {
  std::mt19937_64 rng(45);
  const auto cloud = random_cloud(rng, 200, 2);
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.4, 2);
  const auto g = default_density_grid(cloud, k, 24);
  const auto a = bootstrap_band(cloud, k, g, 0.1, 50, 9);
  EXPECT_EQ(a, bootstrap_band(cloud, k, g, 0.1, 50, 9));
  EXPECT_NE(a.c, bootstrap_band(cloud, k, g, 0.1, 50, 10).c);
  EXPECT_EQ(a.method, "density_bootstrap");
  EXPECT_GT(a.c, 0.0);
  EXPECT_DOUBLE_EQ(a.number("Z_alpha"), std::sqrt(200 * 0.16) * a.c);
  EXPECT_EQ(a.number("grid_size"), 576.0);
  // Replicate sups recomputed directly; c must be one of them.
  const auto base = kde_direct(cloud, k, g);
  std::vector<double> sups;
  for (std::size_t j = 0; j < 50; ++j) {
    Rng r = substream(9, StreamTag::kBootstrap, j);
    const auto star = kde_direct(cloud.subset(bootstrap_indices(r, 200)), k, g);
    double m = 0;
    for (std::size_t i = 0; i < base.size(); ++i) m = std::max(m, std::abs(star.values[i] - base.values[i]));
    sups.push_back(m);
  }
  EXPECT_NEAR(upper_quantile(sups, 0.1), a.c, 1e-12);
}

TEST(DensityDiagram, TwoBumps) {
  const GridField f(GridGeometry({{0, 1, 5}}), {0, 3, 1, 2, 0});
  EXPECT_EQ(density_diagram(f), (PersistenceDiagram{{{0, 2, 1}, {0, 3, 0}}}));
  const GridField negative(GridGeometry({{0, 1, 3}}), {-1, 2, -0.5});
  EXPECT_EQ(density_diagram(negative), (PersistenceDiagram{{{0, 2, -1}}}));
}

TEST(DensityDiagram, RingHasOneLoop) {
  const GridGeometry g({{-2, 2, 41}, {-2, 2, 41}});
  std::vector<double> v(g.vertex_count());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto p = g.vertex_position(i);
    const double r = std::hypot(p[0], p[1]);
    v[i] = std::exp(-20 * (r - 1) * (r - 1));
  }
  const auto d = density_diagram(GridField(g, v));
  std::size_t loops = 0;
  for (const auto& p : d.in_dim(1).pairs) {
    EXPECT_LT(p.death, p.birth);
    loops += p.persistence() > 0.5;
  }
  EXPECT_EQ(loops, 1u);
  const auto h0 = d.in_dim(0).pairs;
  EXPECT_EQ(std::count_if(h0.begin(), h0.end(), [](const auto& p) { return p.death == 0.0; }), 1);
}

TEST(Kde, ReferenceCases) {
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.2, 1);
  const GridGeometry g({{-1, 1, 21}});
  const auto single = kde(PointCloud::from_rows({{0.0}}), k, g);
  EXPECT_NEAR(single.values[10], 1 / std::sqrt(2 * std::numbers::pi) / 0.2, 1e-14);
  const auto pair = kde(PointCloud::from_rows({{-0.3}, {0.3}}), k, g);
  for (std::size_t i = 0; i < 21; ++i) EXPECT_NEAR(pair.values[i], pair.values[20 - i], 1e-15);
}

TEST(BootstrapBand, ReferenceCases) {
  const auto same = PointCloud::from_rows(std::vector<std::vector<double>>(20, {1.0, 2.0}));
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.3, 2);
  EXPECT_EQ(bootstrap_band(same, k, default_density_grid(same, k, 16), 0.05, 10, 1).c, 0.0);
  std::mt19937_64 rng(46);
  const auto cloud = random_cloud(rng, 50, 2);
  const auto g = default_density_grid(cloud, k, 16);
  const auto one = bootstrap_band(cloud, k, g, 0.05, 1, 3);
  Rng r = substream(3, StreamTag::kBootstrap, 0);
  const auto star = kde(cloud.subset(bootstrap_indices(r, 50)), k, g);
  const auto base = kde(cloud, k, g);
  double t = 0;
  for (std::size_t i = 0; i < base.size(); ++i) t = std::max(t, std::abs(star.values[i] - base.values[i]));
  EXPECT_EQ(one.c, t);
}

TEST(Hoeffding, RegressionValues) {
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.3, 2);
  // Independent bisection of the same equation.
  EXPECT_NEAR(hoeffding_band(500, k, 2.0, 0.05), 0.40188968570792827, 1e-10);
  EXPECT_NEAR(grid_band(1000, k, 1024, 0.05), 0.020509364163854578, 1e-15);
  EXPECT_EQ(grid_band(1000, k, 1024, 2048), 0.0);
}

TEST(DensityDiagram, ReferenceCases) {
  EXPECT_EQ(density_diagram(GridField(GridGeometry({{0, 1, 3}}), {0, 1, 0})),
            (PersistenceDiagram{{{0, 1, 0}}}));
  // Bart Simpson density on a fine grid: five spikes stand out.
  const GridGeometry g({{-3, 3, 2001}});
  std::vector<double> v(g.vertex_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = bart_simpson_pdf(g.axis(0).coordinate(i));
  const auto d = density_diagram(GridField(g, v));
  int big = 0;
  for (const auto& p : d.pairs) big += p.persistence() > 0.3;
  EXPECT_EQ(big, 5);
}
}  // namespace
