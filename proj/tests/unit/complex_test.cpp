#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "topoconf/complex.hpp"
#include "topoconf/errors.hpp"

namespace {

using namespace topoconf;

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> rows(n);
  for (auto& r : rows) r = {u(rng), u(rng)};
  return PointCloud::from_rows(rows);
}

std::map<int, std::size_t> count_by_dim(const Filtration& f) {
  std::map<int, std::size_t> out;
  for (const auto& e : f.entries()) ++out[e.simplex.dim()];
  return out;
}

// Every facet present and not later; values monotone along the order.
void expect_valid(const Filtration& f) {
  EXPECT_NO_THROW(f.validate());
  std::map<Simplex, std::size_t> pos;
  for (std::size_t i = 0; i < f.size(); ++i) pos[f[i].simplex] = i;
  EXPECT_EQ(pos.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) EXPECT_LE(f[i - 1].value, f[i].value);
    if (f[i].simplex.dim() == 0) continue;
    for (const auto& facet : f[i].simplex.facets()) {
      ASSERT_TRUE(pos.count(facet));
      EXPECT_LT(pos[facet], i);
    }
  }
}

TEST(Simplex, Facets) {
  const Simplex s{{1, 4, 7}};
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(s.facets(), (std::vector<Simplex>{{{4, 7}}, {{1, 7}}, {{1, 4}}}));
  EXPECT_TRUE(Simplex{{0}}.facets().empty());
}

TEST(RipsFiltration, UnitSquare) {
  const auto square = PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto f = rips_filtration(square, INFINITY, 2);
  expect_valid(f);
  EXPECT_EQ(count_by_dim(f), (std::map<int, std::size_t>{{0, 4}, {1, 6}, {2, 4}}));
  for (const auto& e : f.entries()) {
    if (e.simplex.dim() == 0) EXPECT_EQ(e.value, 0.0);
    if (e.simplex.dim() == 2) EXPECT_DOUBLE_EQ(e.value, std::sqrt(2.0) / 2);
  }
  EXPECT_EQ(f[4].value, 0.5);

  const auto capped = rips_filtration(square, 0.6, 2);
  EXPECT_EQ(count_by_dim(capped), (std::map<int, std::size_t>{{0, 4}, {1, 4}}));
  EXPECT_EQ(count_by_dim(rips_filtration(square, INFINITY, 1)),
            (std::map<int, std::size_t>{{0, 4}, {1, 6}}));
}

TEST(RipsFiltration, CliqueCountsMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cloud = random_cloud(rng, 12);
    const double scale = 0.3;
    const auto f = rips_filtration(cloud, scale, 3);
    expect_valid(f);
    const auto d = pairwise_distances(cloud);
    const std::size_t n = cloud.size();
    auto ok = [&](std::size_t i, std::size_t j) { return d[i * n + j] / 2 <= scale; };
    std::map<int, std::size_t> expected{{0, n}};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!ok(a, b)) continue;
        ++expected[1];
        for (std::size_t c = b + 1; c < n; ++c) {
          if (!ok(a, c) || !ok(b, c)) continue;
          ++expected[2];
          for (std::size_t e = c + 1; e < n; ++e)
            if (ok(a, e) && ok(b, e) && ok(c, e)) ++expected[3];
        }
      }
    std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(count_by_dim(f), expected);
  }
}

TEST(LowerStar, OneDimensionalPath) {
  const GridField field(GridGeometry({{0, 1, 5}}), {3, 1, 4, 1, 5});
  const auto f = lower_star_filtration(field);
  expect_valid(f);
  EXPECT_EQ(count_by_dim(f), (std::map<int, std::size_t>{{0, 5}, {1, 4}}));
  for (const auto& e : f.entries()) {
    double m = -INFINITY;
    for (auto v : e.simplex.vertices) m = std::max(m, field.values[v]);
    EXPECT_EQ(e.value, m);
  }
  const auto up = lower_star_filtration(field, Sweep::kSuperlevel);
  expect_valid(up);
  EXPECT_EQ(up[0].value, -5.0);
}

TEST(LowerStar, FreudenthalCountsAndEuler) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (std::size_t r : {2, 3, 6}) {
    const GridGeometry g({{0, 1, r}, {0, 1, r}});
    std::vector<double> v(g.vertex_count());
    for (auto& x : v) x = z(rng);
    const auto f = lower_star_filtration(GridField(g, v));
    expect_valid(f);
    const std::size_t q = (r - 1) * (r - 1);
    EXPECT_EQ(count_by_dim(f), (std::map<int, std::size_t>{
                                   {0, r * r}, {1, 2 * r * (r - 1) + q}, {2, 2 * q}}));
  }
  const GridGeometry g3({{0, 1, 3}, {0, 1, 3}, {0, 1, 3}});
  const auto f3 = lower_star_filtration(GridField(g3, std::vector<double>(27, 0.0)));
  expect_valid(f3);
  long euler = 0;
  for (auto [dim, c] : count_by_dim(f3)) euler += (dim % 2 ? -1 : 1) * static_cast<long>(c);
  EXPECT_EQ(euler, 1);
  EXPECT_EQ(count_by_dim(f3).at(3), 6u * 8u);
}

TEST(Filtration, ValidateRejectsBrokenInput) {
  using E = FiltrationEntry;
  EXPECT_THROW(Filtration::from_ordered({E{{{1, 0}}, 0}}).validate(), ConfigError);
  EXPECT_THROW(Filtration::from_ordered({E{{{0}}, 0}, E{{{0, 1}}, 1}}).validate(), ConfigError);
  EXPECT_THROW(Filtration::from_ordered({E{{{0}}, 0}, E{{{0, 1}}, 1}, E{{{1}}, 0}}).validate(),
               ConfigError);
  EXPECT_THROW(Filtration::from_ordered({E{{{0}}, 0}, E{{{1}}, 2}, E{{{0, 1}}, 1}}).validate(),
               ConfigError);
  EXPECT_THROW(Filtration::from_ordered({E{{{0}}, 0}, E{{{0}}, 0}}).validate(), ConfigError);
  EXPECT_THROW(Filtration::from_ordered({E{{{0}}, NAN}}).validate(), ConfigError);
  EXPECT_NO_THROW(Filtration::from_ordered({E{{{0}}, 0}, E{{{1}}, 0}, E{{{0, 1}}, 1}}).validate());
}

TEST(Filtration, SortedOrderAndDump) {
  using E = FiltrationEntry;
  const auto f = Filtration::sorted({E{{{0, 1}}, 1}, E{{{1}}, 0.5}, E{{{0}}, 0.5}});
  EXPECT_EQ(f[0].simplex, Simplex{{0}});
  EXPECT_EQ(f[2].simplex, (Simplex{{0, 1}}));
  EXPECT_EQ(f.max_dim(), 1);
  EXPECT_EQ(format_filtration_dump(f), "0.5 0 0\n0.5 0 1\n1 1 0 1\n");
}

TEST(RipsFiltration, SmallExamples) {
  const double h = std::sqrt(3.0) / 2;
  const auto tri = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, h}});
  const auto f = rips_filtration(tri, 1.0, 2);
  EXPECT_EQ(count_by_dim(f), (std::map<int, std::size_t>{{0, 3}, {1, 3}, {2, 1}}));
  for (const auto& e : f.entries()) {
    if (e.simplex.dim() > 0) EXPECT_NEAR(e.value, 0.5, 1e-15);
  }
  const auto single = rips_filtration(PointCloud::from_rows({{2, 3}}), 1.0, 2);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].value, 0.0);
  EXPECT_EQ(rips_filtration(PointCloud::from_rows({{0, 0}, {4, 0}}), 1.0, 2).size(), 2u);
}

TEST(LowerStar, NegatedPathAndSmallGrid) {
  const GridField field(GridGeometry({{0, 1, 3}}), {3, 1, 2});
  const auto f = lower_star_filtration(field, Sweep::kSuperlevel);
  std::map<Simplex, double> value;
  for (const auto& e : f.entries()) value[e.simplex] = e.value;
  EXPECT_EQ(value.at(Simplex{{0}}), -3);
  EXPECT_EQ(value.at(Simplex{{1}}), -1);
  EXPECT_EQ(value.at(Simplex{{2}}), -2);
  EXPECT_EQ(value.at((Simplex{{0, 1}})), -1);
  EXPECT_EQ(value.at((Simplex{{1, 2}})), -1);

  const auto flat = lower_star_filtration(GridField(GridGeometry({{0, 1, 4}}), std::vector<double>(4, 2.0)));
  for (const auto& e : flat.entries()) EXPECT_EQ(e.value, 2.0);

  const auto sq = lower_star_filtration(GridField(GridGeometry({{0, 1, 2}, {0, 1, 2}}), {1, 2, 3, 4}));
  expect_valid(sq);
  EXPECT_EQ(count_by_dim(sq), (std::map<int, std::size_t>{{0, 4}, {1, 5}, {2, 2}}));
}
}  // namespace
