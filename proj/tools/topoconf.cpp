// Command-line front end. Exit codes: 0 success, 2 usage or configuration
// error, 3 numerical failure, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "topoconf/band.hpp"
#include "topoconf/confidence.hpp"
#include "topoconf/datasets.hpp"
#include "topoconf/density.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/experiment.hpp"
#include "topoconf/geometry.hpp"
#include "topoconf/persistence.hpp"
#include "topoconf/pointprocess.hpp"
#include "topoconf/rips_persistence.hpp"
#include "topoconf/svg.hpp"
#include "topoconf/text_io.hpp"

namespace {

using namespace topoconf;
using nlohmann::ordered_json;

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

struct Flags {
  std::string kind;
  std::size_t n = 500;
  std::uint64_t seed = 1;
  std::string out;
  std::string method;
  double alpha = 0.05;
  int d = 1;
  double h = 0.0;
  std::size_t grid_res = 64;
  int max_dim = 2;
  double max_scale = kInfinity;
  std::size_t b = 0;
  std::size_t reps = 500;
  std::size_t B = 300;
  double threshold = 0.34;
  std::string plot;
  bool split = false;
  std::string input;
  std::string band_path;
};

KernelSpec kernel_for(const PointCloud& cloud, const Flags& f) {
  const double h = f.h > 0.0 ? f.h : (cloud.dim() == 1 ? 0.05 : 0.3);
  return KernelSpec::make(KernelKind::kGaussian, h, cloud.dim());
}

int cmd_generate(const Flags& f) {
  if (f.kind.empty()) throw ConfigError("--kind is required");
  const PointCloud cloud = generate(GeneratorSpec::from_kind(f.kind, f.n, f.seed));
  emit(format_point_cloud_csv(cloud), f.out);
  return 0;
}

int cmd_diagram(const Flags& f) {
  const PointCloud cloud = read_point_cloud_csv(f.input);
  if (cloud.empty()) throw ConfigError("input cloud is empty");
  PersistenceDiagram dgm;
  ordered_json meta;
  meta["method"] = f.method;
  meta["n"] = cloud.size();
  meta["dim"] = cloud.dim();
  if (f.method == "rips") {
    dgm = rips_persistence(cloud, f.max_scale, f.max_dim);
    meta["max_dim"] = f.max_dim;
    meta["max_scale"] = num(f.max_scale);
  } else if (f.method == "density") {
    const KernelSpec kernel = kernel_for(cloud, f);
    const GridGeometry grid = default_density_grid(cloud, kernel, f.grid_res);
    dgm = density_diagram(kde(cloud, kernel, grid));
    meta["h"] = kernel.bandwidth;
    meta["grid_res"] = f.grid_res;
  } else {
    throw ConfigError("diagram --method must be rips or density");
  }
  meta["pairs"] = dgm.size();
  emit(format_diagram_csv(dgm), f.out);
  if (!f.plot.empty()) {
    DiagramPlotOptions plot;
    plot.title = f.method + " persistence diagram";
    write_text_file(f.plot, render_diagram_svg(dgm, plot));
  }
  if (!f.out.empty()) std::cout << meta.dump(2) << "\n";
  return 0;
}

int cmd_band(const Flags& f) {
  const PointCloud cloud = read_point_cloud_csv(f.input);
  if (cloud.empty()) throw ConfigError("input cloud is empty");
  const std::size_t n = cloud.size();
  BandResult band;
  const auto& m = f.method;
  if (m == "subsample") {
    const std::size_t b = f.b > 0 ? f.b : default_subsample_size(n);
    band = subsample_band(cloud, b, f.reps, f.alpha, f.seed);
  } else if (m == "concentration" || m == "conservative" || m == "shells") {
    const DensityParams params{f.d, default_rn(static_cast<double>(n), f.d)};
    if (m == "concentration") band = concentration_band(cloud, params, f.alpha, f.split, f.seed);
    else if (m == "shells") band = shells_band(cloud, params, f.alpha, f.split, f.seed);
    else band = conservative_band(cloud, params, f.alpha);
  } else if (m == "density_hoeffding" || m == "density_grid" || m == "density_bootstrap") {
    const KernelSpec kernel = kernel_for(cloud, f);
    const GridGeometry grid = default_density_grid(cloud, kernel, f.grid_res);
    if (m == "density_bootstrap") {
      band = bootstrap_band(cloud, kernel, grid, f.alpha, f.B, f.seed);
    } else {
      band.method = m;
      band.alpha = f.alpha;
      band.diagnostics["h"] = kernel.bandwidth;
      band.diagnostics["n"] = static_cast<double>(n);
      if (m == "density_hoeffding") {
        band.c = hoeffding_band(static_cast<double>(n), kernel, grid.half_width(), f.alpha);
        band.diagnostics["C"] = grid.half_width();
      } else {
        band.c = grid_band(static_cast<double>(n), kernel,
                           static_cast<double>(grid.vertex_count()), f.alpha);
        band.diagnostics["N"] = static_cast<double>(grid.vertex_count());
      }
    }
  } else {
    throw ConfigError("unknown band method '" + m + "'");
  }
  emit(band_to_json(band), f.out);
  return 0;
}

int cmd_classify(const Flags& f) {
  const PersistenceDiagram dgm = read_diagram_csv(f.input);
  const BandResult band = read_band_json(f.band_path);
  const auto split = significant_features(dgm, band);
  ordered_json j;
  j["method"] = band.method;
  j["c"] = num(band.c);
  ordered_json counts = ordered_json::object();
  int top = 0;
  for (const auto& p : dgm.pairs) top = std::max(top, p.dim);
  for (int d = 0; d <= top; ++d) {
    std::size_t k = 0;
    for (const auto& p : split.signal.pairs) k += p.dim == d;
    counts["H" + std::to_string(d)] = k;
  }
  j["significant"] = std::move(counts);
  auto pairs_json = [](const PersistenceDiagram& d) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : d.pairs) arr.push_back({p.dim, num(p.birth), num(p.death)});
    return arr;
  };
  j["signal"] = pairs_json(split.signal);
  j["noise_count"] = split.noise.size();
  emit(j.dump(2) + "\n", f.out);
  if (!f.plot.empty()) {
    DiagramPlotOptions plot;
    plot.title = band.method;
    plot.band_c = band.c;
    write_text_file(f.plot, render_diagram_svg(dgm, plot));
  }
  return 0;
}

int cmd_count_ci(const Flags& f) {
  const PointCloud cloud = read_point_cloud_csv(f.input);
  if (cloud.empty()) throw ConfigError("input cloud is empty");
  const KernelSpec kernel = kernel_for(cloud, f);
  const GridGeometry grid = default_density_grid(cloud, kernel, f.grid_res);
  const auto ci = bootstrap_count_ci(cloud, kernel, grid, f.threshold, f.alpha, f.B, f.seed);
  ordered_json j;
  j["threshold"] = f.threshold;
  j["alpha"] = f.alpha;
  j["B"] = f.B;
  j["h"] = kernel.bandwidth;
  j["observed"] = count_beyond(density_diagram(kde(cloud, kernel, grid)), f.threshold);
  j["lo"] = ci.lo;
  j["hi"] = ci.hi;
  emit(j.dump(2) + "\n", f.out);
  return 0;
}

int cmd_experiment(const Flags& f, bool grid_res_set, bool n_set) {
  ExperimentOptions o;
  o.seed = f.seed;
  o.alpha = f.alpha;
  o.n = n_set ? f.n : 0;
  o.h = f.h;
  o.grid_res = grid_res_set ? f.grid_res : 0;
  o.b = f.b;
  o.reps = f.reps;
  o.B = f.B;
  o.threshold = f.threshold;
  o.max_dim = f.max_dim;
  o.max_scale = f.max_scale;
  o.d = f.d;
  o.split = f.split;
  const auto report = run_experiment(f.method, o);
  const std::string dir = f.out.empty() ? "report_" + f.method : f.out;
  write_experiment_report(report, dir);
  std::cout << experiment_summary_json(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence sets for persistence diagrams"};
  // -h would collide with the bandwidth flag --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("generate", "Sample a synthetic point cloud");
  gen->add_option("--kind", f.kind, "uniform_circle | truncated_normal_circle | eyeglasses | "
                                    "bart_simpson, optionally with +outliers")->required();
  gen->add_option("--n", f.n, "Number of points");
  gen->add_option("--seed", f.seed, "Random seed");
  gen->add_option("--out", f.out, "Output CSV (stdout if omitted)");

  auto* dia = app.add_subcommand("diagram", "Persistence diagram of a point cloud");
  dia->add_option("input", f.input, "Point cloud CSV")->required();
  dia->add_option("--method", f.method, "rips | density")->required();
  dia->add_option("--max-dim", f.max_dim, "Largest simplex dimension (Rips)");
  dia->add_option("--max-scale", f.max_scale, "Largest filtration value (Rips)");
  dia->add_option("--h", f.h, "Kernel bandwidth (density)");
  dia->add_option("--grid-res", f.grid_res, "Grid points per axis (density)");
  dia->add_option("--out", f.out, "Diagram CSV (stdout if omitted)");
  dia->add_option("--plot", f.plot, "Write an SVG plot");

  auto* band = app.add_subcommand("band", "Confidence band half-width as JSON");
  band->add_option("input", f.input, "Point cloud CSV")->required();
  band->add_option("--method", f.method,
                   "subsample | concentration | conservative | shells | density_hoeffding | "
                   "density_grid | density_bootstrap")->required();
  band->add_option("--alpha", f.alpha, "Significance level");
  band->add_option("--d", f.d, "Intrinsic dimension");
  band->add_option("--b", f.b, "Subsample size (default ceil(n / ln(n)^2))");
  band->add_option("--reps", f.reps, "Subsample replicates");
  band->add_option("--B", f.B, "Bootstrap replicates");
  band->add_option("--h", f.h, "Kernel bandwidth");
  band->add_option("--grid-res", f.grid_res, "Grid points per axis");
  band->add_option("--seed", f.seed, "Random seed");
  band->add_flag("--split", f.split, "Estimate on one half, apply to the other");
  band->add_option("--out", f.out, "Output JSON (stdout if omitted)");

  auto* cls = app.add_subcommand("classify", "Split a diagram into signal and noise");
  cls->add_option("diagram", f.input, "Diagram CSV")->required();
  cls->add_option("band", f.band_path, "Band JSON")->required();
  cls->add_option("--out", f.out, "Output JSON (stdout if omitted)");
  cls->add_option("--plot", f.plot, "Write an SVG plot with the band");

  auto* cci = app.add_subcommand("count-ci", "Bootstrap interval for the count of far points");
  cci->add_option("input", f.input, "Point cloud CSV")->required();
  cci->add_option("--threshold", f.threshold, "Euclidean distance to the diagonal");
  cci->add_option("--alpha", f.alpha, "Significance level");
  cci->add_option("--B", f.B, "Bootstrap replicates");
  cci->add_option("--h", f.h, "Kernel bandwidth");
  cci->add_option("--grid-res", f.grid_res, "Grid points per axis");
  cci->add_option("--seed", f.seed, "Random seed");
  cci->add_option("--out", f.out, "Output JSON (stdout if omitted)");

  auto* exp = app.add_subcommand("experiment", "Run a reproduction experiment and write a report");
  exp->add_option("name", f.method, "ex4_1 | ex4_2 | ex4_3 | ex4_4 | bart")->required();
  exp->add_option("--seed", f.seed, "Random seed");
  exp->add_option("--alpha", f.alpha, "Significance level");
  auto* exp_n = exp->add_option("--n", f.n, "Sample size override");
  exp->add_option("--d", f.d, "Intrinsic dimension");
  exp->add_option("--h", f.h, "Kernel bandwidth override");
  auto* exp_res = exp->add_option("--grid-res", f.grid_res, "Grid points per axis override");
  exp->add_option("--max-dim", f.max_dim, "Largest simplex dimension");
  exp->add_option("--max-scale", f.max_scale, "Largest Rips filtration value");
  exp->add_option("--b", f.b, "Subsample size");
  exp->add_option("--reps", f.reps, "Subsample replicates");
  exp->add_option("--B", f.B, "Bootstrap replicates");
  exp->add_option("--threshold", f.threshold, "Count threshold (bart)");
  exp->add_flag("--split", f.split, "Sample splitting for concentration and shells");
  exp->add_option("--out", f.out, "Report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_generate(f);
    if (*dia) return cmd_diagram(f);
    if (*band) return cmd_band(f);
    if (*cls) return cmd_classify(f);
    if (*cci) return cmd_count_ci(f);
    if (*exp) return cmd_experiment(f, exp_res->count() > 0, exp_n->count() > 0);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
