#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/experiment.hpp"

namespace {

using namespace topoconf;
namespace fs = std::filesystem;

ExperimentOptions small() {
  ExperimentOptions o;
  o.seed = 3;
  o.n = 120;
  o.reps = 40;
  o.B = 15;
  o.grid_res = 24;
  return o;
}

TEST(ApplyBand, FailureMeansInfiniteBand) {
  const PersistenceDiagram d{{{0, 0, 0.5}, {0, 0, kInfinity}, {1, 0.1, 0.9}}};
  const auto failed = apply_band("concentration", 0.05, []() -> BandResult {
    throw NumericalError("no sign change");
  }, d);
  EXPECT_TRUE(failed.failed);
  EXPECT_EQ(failed.band.c, kInfinity);
  EXPECT_EQ(failed.band.method, "concentration");
  EXPECT_EQ(failed.signal_h0, 1u);
  EXPECT_EQ(failed.signal_h1, 0u);
  const auto ok = apply_band("x", 0.05, [] { BandResult b; b.c = 0.1; return b; }, d);
  EXPECT_FALSE(ok.failed);
  EXPECT_EQ(ok.signal_h0, 2u);
  EXPECT_EQ(ok.signal_h1, 1u);
  EXPECT_THROW(apply_band("x", 0.05, []() -> BandResult { throw ConfigError("bad"); }, d),
               ConfigError);
}

TEST(Experiment, CircleReportIsCompleteAndDeterministic) {
  const auto report = run_experiment("ex4_1", small());
  ASSERT_EQ(report.cases.size(), 1u);
  const auto& c = report.cases[0];
  EXPECT_EQ(c.cloud.size(), 120u);
  EXPECT_EQ(c.rips_methods.size(), 3u);
  EXPECT_EQ(c.density_methods.size(), 3u);
  const auto summary = experiment_summary_json(report);
  EXPECT_EQ(summary, experiment_summary_json(run_experiment("ex4_1", small())));
  const auto j = nlohmann::json::parse(summary);
  EXPECT_EQ(j["experiment"], "ex4_1");
  EXPECT_TRUE(j["cases"][0]["rips"].contains("subsample"));
  EXPECT_TRUE(j["cases"][0]["density"].contains("density_bootstrap"));

  const auto dir = fs::temp_directory_path() / "topoconf_experiment_test";
  fs::remove_all(dir);
  write_experiment_report(report, dir.string());
  for (const char* f : {"summary.json", "circle_points.csv", "circle_rips_diagram.csv",
                        "circle_band_subsample.json", "circle_rips_shells.svg",
                        "circle_density_field.csv", "circle_density_diagram.csv",
                        "circle_density_density_bootstrap.svg"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  fs::remove_all(dir);
}

TEST(Experiment, OutliersAndBart) {
  auto o = small();
  o.n = 100;
  const auto ex4 = run_experiment("ex4_4", o);
  ASSERT_EQ(ex4.cases.size(), 2u);
  EXPECT_EQ(ex4.cases[0].cloud.size(), 105u);

  auto b = small();
  b.n = 200;
  b.grid_res = 128;
  const auto bart = run_experiment("bart", b);
  ASSERT_EQ(bart.cases.size(), 1u);
  ASSERT_TRUE(bart.cases[0].count_ci.has_value());
  EXPECT_LE(bart.cases[0].count_ci->lo, bart.cases[0].count_ci->hi);
  EXPECT_EQ(bart.cases[0].smoothed->cells, 20u);
  EXPECT_FALSE(bart.cases[0].has_rips);
}

TEST(Experiment, SplitVariants) {
  auto o = small();
  o.split = true;
  const auto report = run_experiment("ex4_1", o);
  const auto& m = report.cases[0].rips_methods;
  EXPECT_EQ(m[1].band.method, "concentration_split");
  EXPECT_EQ(m[2].band.method, "shells_split");
}

TEST(Experiment, Validation) {
  EXPECT_FALSE(is_experiment_name("ex9"));
  EXPECT_THROW(run_experiment("ex9", small()), ConfigError);
  auto o = small();
  o.alpha = 1.5;
  EXPECT_THROW(run_experiment("ex4_1", o), ConfigError);
}

}  // namespace
