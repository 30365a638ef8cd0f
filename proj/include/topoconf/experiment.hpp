#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topoconf/band.hpp"
#include "topoconf/datasets.hpp"
#include "topoconf/grid.hpp"
#include "topoconf/persistence.hpp"
#include "topoconf/pointprocess.hpp"

namespace topoconf {

/// Zero or negative numeric fields select the experiment's own default.
struct ExperimentOptions {
  std::uint64_t seed = 1;
  double alpha = 0.05;
  std::size_t n = 0;
  double h = 0.0;
  std::size_t grid_res = 0;
  std::size_t b = 0;
  std::size_t reps = 500;
  std::size_t B = 300;
  double threshold = 0.34;
  int max_dim = 2;
  double max_scale = kInfinity;
  int d = 1;
  bool split = false;
};

/// A band applied to a diagram. A band whose solve failed is recorded with
/// c = +inf, so only essential classes count as signal.
struct MethodOutcome {
  BandResult band;
  bool failed = false;
  std::string error;
  std::size_t signal_h0 = 0;
  std::size_t signal_h1 = 0;
};

/// Runs `make_band`, catching NumericalError, and classifies `diagram`.
MethodOutcome apply_band(const std::string& method, double alpha,
                         const std::function<BandResult()>& make_band,
                         const PersistenceDiagram& diagram);

struct CaseResult {
  std::string label;
  GeneratorSpec spec;
  PointCloud cloud;
  bool has_rips = false;
  PersistenceDiagram rips;
  std::vector<MethodOutcome> rips_methods;
  bool has_density = false;
  GridField density;
  PersistenceDiagram density_diagram;
  std::vector<MethodOutcome> density_methods;
  std::optional<CountInterval> count_ci;
  std::optional<SmoothedDiagram> smoothed;
};

struct ExperimentReport {
  std::string name;
  ExperimentOptions options;
  std::vector<CaseResult> cases;
};

/// Names: ex4_1, ex4_2, ex4_3, ex4_4, bart.
bool is_experiment_name(std::string_view name);

/// Distance-function pipeline: Rips diagram with the subsample,
/// concentration and shells bands.
CaseResult run_rips_case(const std::string& label, const GeneratorSpec& spec,
                         const ExperimentOptions& options);

/// Adds the density pipeline (kde, density diagram, Hoeffding, grid and
/// bootstrap bands) to `result`.
void run_density_case(CaseResult& result, double h, std::size_t grid_res,
                      const ExperimentOptions& options);

ExperimentReport run_experiment(std::string_view name, const ExperimentOptions& options);

/// Machine-readable summary: per case and method, c and the number of
/// significant H0 and H1 features.
std::string experiment_summary_json(const ExperimentReport& report);

/// Writes CSV, JSON and SVG artifacts plus summary.json into `dir`,
/// creating it if needed.
void write_experiment_report(const ExperimentReport& report, const std::string& dir);

}  // namespace topoconf
