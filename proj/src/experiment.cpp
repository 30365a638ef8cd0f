#include "topoconf/experiment.hpp"

#include <cmath>
#include <filesystem>

#include "json.hpp"
#include "topoconf/confidence.hpp"
#include "topoconf/density.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/rips_persistence.hpp"
#include "topoconf/svg.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

MethodOutcome apply_band(const std::string& method, double alpha,
                         const std::function<BandResult()>& make_band,
                         const PersistenceDiagram& diagram) {
  MethodOutcome out;
  try {
    out.band = make_band();
  } catch (const NumericalError& e) {
    out.failed = true;
    out.error = e.what();
    out.band.method = method;
    out.band.alpha = alpha;
    out.band.c = kInfinity;
    out.band.diagnostics["error"] = std::string(e.what());
  }
  const auto split = significant_features(diagram, out.band);
  for (const auto& p : split.signal.pairs) {
    if (p.dim == 0) ++out.signal_h0;
    if (p.dim == 1) ++out.signal_h1;
  }
  return out;
}

bool is_experiment_name(std::string_view name) {
  return name == "ex4_1" || name == "ex4_2" || name == "ex4_3" || name == "ex4_4" ||
         name == "bart";
}

CaseResult run_rips_case(const std::string& label, const GeneratorSpec& spec,
                         const ExperimentOptions& options) {
  CaseResult r;
  r.label = label;
  r.spec = spec;
  r.cloud = generate(spec);
  r.has_rips = true;
  r.rips = rips_persistence(r.cloud, options.max_scale, options.max_dim);

  const std::size_t n = r.cloud.size();
  const DensityParams params{options.d, default_rn(static_cast<double>(n), options.d)};
  const std::size_t b = options.b > 0 ? options.b : default_subsample_size(n);
  const double alpha = options.alpha;
  const std::uint64_t seed = options.seed;
  const bool split = options.split && n % 2 == 0;

  // With a split, the band refers to the diagram of the evaluation half.
  PersistenceDiagram split_diagram;
  if (split) {
    const auto halves = split_halves(n, seed);
    split_diagram = rips_persistence(r.cloud.subset(halves.evaluate), options.max_scale,
                                     options.max_dim);
  }
  const PersistenceDiagram& banded = split ? split_diagram : r.rips;

  r.rips_methods.push_back(apply_band("subsample", alpha, [&] {
    return subsample_band(r.cloud, b, options.reps, alpha, seed);
  }, r.rips));
  r.rips_methods.push_back(apply_band(split ? "concentration_split" : "concentration", alpha, [&] {
    return concentration_band(r.cloud, params, alpha, split, seed);
  }, banded));
  r.rips_methods.push_back(apply_band(split ? "shells_split" : "shells", alpha, [&] {
    return shells_band(r.cloud, params, alpha, split, seed);
  }, banded));
  return r;
}

void run_density_case(CaseResult& r, double h, std::size_t grid_res,
                      const ExperimentOptions& options) {
  const KernelSpec kernel = KernelSpec::make(KernelKind::kGaussian, h, r.cloud.dim());
  const GridGeometry grid = default_density_grid(r.cloud, kernel, grid_res);
  r.has_density = true;
  r.density = kde(r.cloud, kernel, grid);
  r.density_diagram = density_diagram(r.density);
  const double n = static_cast<double>(r.cloud.size());
  const double alpha = options.alpha;
  r.density_methods.push_back(apply_band("density_hoeffding", alpha, [&] {
    BandResult band;
    band.method = "density_hoeffding";
    band.alpha = alpha;
    band.c = hoeffding_band(n, kernel, grid.half_width(), alpha);
    band.diagnostics["C"] = grid.half_width();
    band.diagnostics["h"] = h;
    return band;
  }, r.density_diagram));
  r.density_methods.push_back(apply_band("density_grid", alpha, [&] {
    BandResult band;
    band.method = "density_grid";
    band.alpha = alpha;
    band.c = grid_band(n, kernel, static_cast<double>(grid.vertex_count()), alpha);
    band.diagnostics["N"] = static_cast<double>(grid.vertex_count());
    band.diagnostics["h"] = h;
    return band;
  }, r.density_diagram));
  r.density_methods.push_back(apply_band("density_bootstrap", alpha, [&] {
    return bootstrap_band(r.cloud, kernel, grid, alpha, options.B, options.seed);
  }, r.density_diagram));
}

namespace {

GeneratorSpec spec_for(std::string_view kind, std::size_t n, const ExperimentOptions& o) {
  return GeneratorSpec::from_kind(kind, o.n > 0 ? o.n : n, o.seed);
}

std::size_t res_or(const ExperimentOptions& o, std::size_t fallback) {
  return o.grid_res > 0 ? o.grid_res : fallback;
}

double h_or(const ExperimentOptions& o, double fallback) { return o.h > 0.0 ? o.h : fallback; }

}  // namespace

ExperimentReport run_experiment(std::string_view name, const ExperimentOptions& options) {
  if (!is_experiment_name(name)) {
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  ExperimentReport report;
  report.name = std::string(name);
  report.options = options;
  auto both = [&](const std::string& label, std::string_view kind, std::size_t n) {
    CaseResult c = run_rips_case(label, spec_for(kind, n, options), options);
    run_density_case(c, h_or(options, 0.3), res_or(options, 64), options);
    report.cases.push_back(std::move(c));
  };
  if (name == "ex4_1") {
    both("circle", "uniform_circle", 500);
  } else if (name == "ex4_2") {
    both("truncated_normal", "truncated_normal_circle", 1000);
  } else if (name == "ex4_3") {
    both("eyeglasses", "eyeglasses", 1000);
  } else if (name == "ex4_4") {
    both("circle_outliers", "uniform_circle+outliers", 500);
    both("eyeglasses_outliers", "eyeglasses+outliers", 1000);
  } else {
    CaseResult c;
    c.label = "bart_simpson";
    c.spec = spec_for("bart_simpson", 1000, options);
    c.cloud = generate(c.spec);
    const double h = h_or(options, 0.05);
    run_density_case(c, h, res_or(options, 512), options);
    const KernelSpec kernel = KernelSpec::make(KernelKind::kGaussian, h, 1);
    const GridGeometry grid = default_density_grid(c.cloud, kernel, res_or(options, 512));
    c.count_ci = bootstrap_count_ci(c.cloud, kernel, grid, options.threshold, options.alpha,
                                    options.B, options.seed);
    const PlaneWindow window = default_window(c.density_diagram);
    c.smoothed = smooth_diagram(c.density_diagram, (window.hi - window.lo) / 20.0, window);
    report.cases.push_back(std::move(c));
  }
  return report;
}

namespace {

using nlohmann::ordered_json;

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

ordered_json methods_json(const std::vector<MethodOutcome>& methods) {
  ordered_json out = ordered_json::object();
  for (const auto& m : methods) {
    ordered_json j;
    j["c"] = num(m.band.c);
    j["failed"] = m.failed;
    if (m.failed) j["error"] = m.error;
    j["significant"] = {{"H0", m.signal_h0}, {"H1", m.signal_h1}};
    out[m.band.method] = std::move(j);
  }
  return out;
}

ordered_json options_json(const ExperimentOptions& o) {
  ordered_json j;
  j["seed"] = std::to_string(o.seed);
  j["alpha"] = o.alpha;
  j["n"] = o.n;
  j["h"] = o.h;
  j["grid_res"] = o.grid_res;
  j["b"] = o.b;
  j["reps"] = o.reps;
  j["B"] = o.B;
  j["threshold"] = o.threshold;
  j["max_dim"] = o.max_dim;
  j["max_scale"] = num(o.max_scale);
  j["d"] = o.d;
  j["split"] = o.split;
  return j;
}

}  // namespace

std::string experiment_summary_json(const ExperimentReport& report) {
  ordered_json j;
  j["experiment"] = report.name;
  j["options"] = options_json(report.options);
  ordered_json cases = ordered_json::array();
  for (const auto& c : report.cases) {
    ordered_json cj;
    cj["label"] = c.label;
    cj["kind"] = std::string(generator_kind_name(c.spec.kind));
    cj["n"] = c.cloud.size();
    cj["outliers"] = c.spec.outliers ? c.spec.outliers->count : 0;
    if (c.has_rips) cj["rips"] = methods_json(c.rips_methods);
    if (c.has_density) {
      cj["density"] = methods_json(c.density_methods);
    }
    if (c.count_ci) {
      cj["count_ci"] = {{"threshold", report.options.threshold},
                        {"lo", c.count_ci->lo},
                        {"hi", c.count_ci->hi},
                        {"observed", count_beyond(c.density_diagram, report.options.threshold)}};
    }
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j.dump(2) + "\n";
}

void write_experiment_report(const ExperimentReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  for (const auto& c : report.cases) {
    const std::string base = (fs::path(dir) / c.label).string();
    write_point_cloud_csv(c.cloud, base + "_points.csv");
    if (c.has_rips) {
      write_diagram_csv(c.rips, base + "_rips_diagram.csv");
      for (const auto& m : c.rips_methods) {
        write_band_json(m.band, base + "_band_" + m.band.method + ".json");
        DiagramPlotOptions plot;
        plot.title = c.label + " Rips, " + m.band.method;
        plot.band_c = m.band.c;
        write_text_file(base + "_rips_" + m.band.method + ".svg", render_diagram_svg(c.rips, plot));
      }
    }
    if (c.has_density) {
      write_text_file(base + "_density_field.csv", format_grid_field_csv(c.density));
      write_diagram_csv(c.density_diagram, base + "_density_diagram.csv");
      for (const auto& m : c.density_methods) {
        write_band_json(m.band, base + "_band_" + m.band.method + ".json");
        DiagramPlotOptions plot;
        plot.title = c.label + " density, " + m.band.method;
        plot.band_c = m.band.c;
        write_text_file(base + "_density_" + m.band.method + ".svg",
                        render_diagram_svg(c.density_diagram, plot));
      }
    }
    if (c.smoothed) write_text_file(base + "_smoothed.csv", format_smoothed_csv(*c.smoothed));
    if (c.count_ci) {
      std::string counts;
      for (auto k : c.count_ci->replicate_counts) counts += std::to_string(k) + "\n";
      write_text_file(base + "_count_replicates.csv", counts);
    }
  }
  write_text_file((fs::path(dir) / "summary.json").string(), experiment_summary_json(report));
}

}  // namespace topoconf
