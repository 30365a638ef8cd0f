#include <gtest/gtest.h>

#include <cmath>

#include "test_print.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/pointprocess.hpp"

namespace {

using namespace topoconf;

TEST(SmoothDiagram, EmptyAndSinglePoint) {
  const PlaneWindow win{0.0, 1.0};
  const auto empty = smooth_diagram({}, 0.25, win);
  EXPECT_EQ(empty.cells, 4u);
  EXPECT_EQ(empty.total(), 0u);
  const auto one = smooth_diagram({{{0, 0.375, 0.625}}}, 0.25, win);
  EXPECT_EQ(one.total(), 1u);
  EXPECT_EQ(one.counts[1 * 4 + 2], 1u);
}

TEST(SmoothDiagram, HalfOpenCells) {
  const PlaneWindow win{0.0, 1.0};
  const PersistenceDiagram d{{{0, 0.25, 0.5}, {0, 0.0, 0.75}, {0, 0.5, 0.25}, {0, 1.0, 0.5},
                              {1, 0.2, kInfinity}}};
  const auto s = smooth_diagram(d, 0.25, win);
  EXPECT_EQ(s.counts[1 * 4 + 2], 1u);
  EXPECT_EQ(s.counts[0 * 4 + 3], 1u);
  EXPECT_EQ(s.counts[2 * 4 + 1], 1u);
  // Birth at hi falls outside; the essential pair is never counted.
  EXPECT_EQ(s.total(), 3u);
  // A window that is not a multiple of w clips the last cell.
  const auto clipped = smooth_diagram({{{0, 0.95, 0.1}}}, 0.3, win);
  EXPECT_EQ(clipped.cells, 4u);
  EXPECT_EQ(clipped.counts[3 * 4 + 0], 1u);
  EXPECT_THROW(smooth_diagram(d, 0.0, win), ConfigError);
  EXPECT_THROW(smooth_diagram(d, 0.1, {1.0, 1.0}), ConfigError);
}

TEST(SmoothDiagram, WindowAndCsv) {
  const PersistenceDiagram d{{{0, 1.0, 0.0}, {0, 0.5, 0.25}, {0, 3.0, kInfinity}}};
  const auto w = default_window(d);
  EXPECT_DOUBLE_EQ(w.lo, -0.1);
  EXPECT_DOUBLE_EQ(w.hi, 1.1);
  EXPECT_EQ(smooth_diagram(d, 0.05, w).total(), 2u);
  const auto s = smooth_diagram({{{0, 0.1, 0.6}}}, 0.5, {0.0, 1.0});
  EXPECT_EQ(format_smoothed_csv(s), "0.5,0,1,2\n0,1\n0,0\n");
  EXPECT_EQ(default_window({}).hi, 1.0);
}

TEST(CountBeyond, Examples) {
  const PersistenceDiagram d{{{0, 0, 1}}};
  EXPECT_NEAR(euclidean_diagonal_distance(d.pairs[0]), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(count_beyond(d, 0.8), 0u);
  EXPECT_EQ(count_beyond(d, 0.7), 1u);
  const PersistenceDiagram mixed{{{0, 0, 1}, {0, 0.3, 0.3}, {0, 2, 1.5}, {1, 0, kInfinity}}};
  EXPECT_EQ(count_beyond(mixed, 0.0), 3u);
  EXPECT_EQ(count_beyond(mixed, 10.0), 1u);
  EXPECT_THROW(count_beyond(mixed, -1.0), ConfigError);
}

TEST(BootstrapCountCi, UnimodalCloud) {
  const auto cloud = PointCloud::from_rows(std::vector<std::vector<double>>(30, {0.0}));
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.1, 1);
  const auto g = default_density_grid(cloud, k, 64);
  const double peak = k.k0 / 0.1;
  const auto below = bootstrap_count_ci(cloud, k, g, 0.5 * peak / std::sqrt(2.0), 0.05, 20, 1);
  EXPECT_EQ(below.lo, 1u);
  EXPECT_EQ(below.hi, 1u);
  const auto above = bootstrap_count_ci(cloud, k, g, 2.0 * peak, 0.05, 20, 1);
  EXPECT_EQ(above.lo, 0u);
  EXPECT_EQ(above.hi, 0u);
  EXPECT_EQ(above.replicate_counts.size(), 20u);
}

TEST(BootstrapCountCi, OrderedAndDeterministic) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) rows.push_back({std::sin(i * 1.7) * 2 + (i % 3)});
  const auto cloud = PointCloud::from_rows(rows);
  const auto k = KernelSpec::make(KernelKind::kGaussian, 0.2, 1);
  const auto g = default_density_grid(cloud, k, 128);
  const auto a = bootstrap_count_ci(cloud, k, g, 0.01, 0.1, 40, 2);
  EXPECT_LE(a.lo, a.hi);
  EXPECT_EQ(a.replicate_counts, bootstrap_count_ci(cloud, k, g, 0.01, 0.1, 40, 2).replicate_counts);
  auto sorted = a.replicate_counts;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(a.lo, sorted[1]);   // ceil(0.05 * 40) - 1
  EXPECT_EQ(a.hi, sorted[37]);  // ceil(0.95 * 40) - 1
}

}  // namespace
