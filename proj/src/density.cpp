#include "topoconf/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "topoconf/errors.hpp"
#include "topoconf/random.hpp"
#include "topoconf/solve.hpp"
#include "topoconf/simd/kernels.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "gaussian") return KernelKind::kGaussian;
  if (name == "epanechnikov-smoothed") return KernelKind::kEpanechnikovSmoothed;
  if (name == "triangular") return KernelKind::kTriangular;
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

std::string_view kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::kGaussian: return "gaussian";
    case KernelKind::kEpanechnikovSmoothed: return "epanechnikov-smoothed";
    case KernelKind::kTriangular: return "triangular";
  }
  return "?";
}

namespace {

// Surface area of the unit sphere in R^D.
double sphere_area(std::size_t dim) {
  const double half = static_cast<double>(dim) / 2.0;
  return 2.0 * std::pow(std::numbers::pi, half) / boost::math::tgamma(half);
}

}  // namespace

KernelSpec KernelSpec::make(KernelKind kind, double bandwidth, std::size_t dim) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw ConfigError("bandwidth must be positive");
  }
  if (dim == 0) throw ConfigError("kernel dimension must be positive");
  KernelSpec k;
  k.kind = kind;
  k.bandwidth = bandwidth;
  k.dim = dim;
  const double D = static_cast<double>(dim);
  switch (kind) {
    case KernelKind::kGaussian:
      k.k0 = std::pow(2.0 * std::numbers::pi, -D / 2.0);
      k.lipschitz = k.k0 * std::exp(-0.5);
      break;
    case KernelKind::kTriangular:
      k.k0 = D * (D + 1.0) / sphere_area(dim);
      k.lipschitz = k.k0;
      break;
    case KernelKind::kEpanechnikovSmoothed:
      k.k0 = D * (D + 2.0) * (D + 4.0) / (8.0 * sphere_area(dim));
      k.lipschitz = k.k0 * 8.0 / (3.0 * std::sqrt(3.0));
      break;
  }
  return k;
}

double KernelSpec::profile(double r) const {
  switch (kind) {
    case KernelKind::kGaussian:
      return k0 * std::exp(-0.5 * r * r);
    case KernelKind::kTriangular:
      return r < 1.0 ? k0 * (1.0 - r) : 0.0;
    case KernelKind::kEpanechnikovSmoothed: {
      if (r >= 1.0) return 0.0;
      const double s = 1.0 - r * r;
      return k0 * s * s;
    }
  }
  return 0.0;
}

GridGeometry default_density_grid(const PointCloud& cloud, const KernelSpec& kernel,
                                  std::size_t resolution) {
  return GridGeometry::around(cloud, 3.0 * kernel.bandwidth, resolution);
}

namespace {

void check_inputs(const PointCloud& cloud, const KernelSpec& kernel, const GridGeometry& grid) {
  if (cloud.empty()) throw ConfigError("kernel density estimate of an empty cloud");
  if (cloud.dim() != grid.dim() || kernel.dim != cloud.dim()) {
    throw ConfigError("kernel, grid and cloud dimensions differ");
  }
}

// Per-point, per-axis Gaussian factors phi((g - x)/h)/h, laid out as
// factors[i][offset[a] + g].
struct AxisFactors {
  std::vector<std::size_t> offset;
  std::size_t stride = 0;
  std::vector<double> data;

  const double* at(std::size_t i, std::size_t a) const {
    return data.data() + i * stride + offset[a];
  }
};

AxisFactors gaussian_factors(const PointCloud& cloud, double h, const GridGeometry& grid) {
  AxisFactors f;
  for (std::size_t a = 0; a < grid.dim(); ++a) {
    f.offset.push_back(f.stride);
    f.stride += grid.axis(a).resolution;
  }
  f.data.resize(cloud.size() * f.stride);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * h);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t a = 0; a < grid.dim(); ++a) {
      const auto& ax = grid.axis(a);
      double* out = f.data.data() + i * f.stride + f.offset[a];
      for (std::size_t g = 0; g < ax.resolution; ++g) {
        const double u = (ax.coordinate(g) - cloud.coord(i, a)) / h;
        out[g] = norm * std::exp(-0.5 * u * u);
      }
    }
  }
  return f;
}

// Sum over the listed points of the outer product of their axis factors,
// divided by the number of entries.
std::vector<double> accumulate_separable(const AxisFactors& f, const GridGeometry& grid,
                                         const std::vector<std::size_t>& points) {
  const auto& k = simd::kernels();
  const std::size_t dim = grid.dim();
  const std::size_t last = grid.axis(dim - 1).resolution;
  const std::size_t rows = grid.vertex_count() / last;
  std::vector<double> acc(grid.vertex_count(), 0.0);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t i : points) {
    const double* tail = f.at(i, dim - 1);
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t r = 0; r < rows; ++r) {
      double coef = 1.0;
      for (std::size_t a = 0; a + 1 < dim; ++a) coef *= f.at(i, a)[idx[a]];
      k.axpy(coef, tail, acc.data() + r * last, last);
      for (std::size_t a = dim - 1; a-- > 0;) {
        if (++idx[a] < grid.axis(a).resolution) break;
        idx[a] = 0;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(points.size());
  for (double& v : acc) v *= inv;
  return acc;
}

std::vector<std::size_t> identity_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

GridField kde_direct(const PointCloud& cloud, const KernelSpec& kernel,
                     const GridGeometry& grid) {
  check_inputs(cloud, kernel, grid);
  const double h = kernel.bandwidth;
  const double scale = std::pow(h, -static_cast<double>(grid.dim()));
  std::vector<double> values(grid.vertex_count(), 0.0);
  for (std::size_t v = 0; v < values.size(); ++v) {
    const auto x = grid.vertex_position(v);
    double sum = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      double acc = 0.0;
      for (std::size_t a = 0; a < grid.dim(); ++a) {
        const double d = x[a] - cloud.coord(i, a);
        acc = acc + d * d;
      }
      sum += kernel.profile(std::sqrt(acc) / h);
    }
    values[v] = scale * sum / static_cast<double>(cloud.size());
  }
  return GridField(grid, std::move(values));
}

GridField kde(const PointCloud& cloud, const KernelSpec& kernel, const GridGeometry& grid) {
  check_inputs(cloud, kernel, grid);
  if (kernel.kind != KernelKind::kGaussian) return kde_direct(cloud, kernel, grid);
  const auto factors = gaussian_factors(cloud, kernel.bandwidth, grid);
  return GridField(grid, accumulate_separable(factors, grid, identity_indices(cloud.size())));
}

double hoeffding_lhs(double n, const KernelSpec& kernel, double half_width, double delta) {
  const double D = static_cast<double>(kernel.dim);
  const double h = kernel.bandwidth;
  const double base = 4.0 * half_width * kernel.lipschitz * std::sqrt(D) /
                      (delta * std::pow(h, D + 1.0));
  const double expo = n * delta * delta * std::pow(h, 2.0 * D) / (2.0 * kernel.k0 * kernel.k0);
  return 2.0 * std::pow(base, D) * std::exp(-expo);
}

double hoeffding_band(double n, const KernelSpec& kernel, double half_width, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(n > 0.0) || !(half_width > 0.0)) throw ConfigError("n and C must be positive");
  const double D = static_cast<double>(kernel.dim);
  const double h = kernel.bandwidth;
  const double log_c = std::log(4.0 * half_width * kernel.lipschitz * std::sqrt(D)) -
                       (D + 1.0) * std::log(h);
  const double rate = n * std::pow(h, 2.0 * D) / (2.0 * kernel.k0 * kernel.k0);
  const double log_alpha = std::log(alpha);
  // log lhs is strictly decreasing in delta.
  auto f = [&](double delta) {
    return std::log(2.0) + D * (log_c - std::log(delta)) - rate * delta * delta - log_alpha;
  };
  const double hi = expand_upper(f, 1.0, "hoeffding_band");
  return bisect_decreasing(f, {1e-300, hi}, "hoeffding_band");
}

double grid_band(double n, const KernelSpec& kernel, double grid_size, double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(n > 0.0) || !(grid_size >= 1.0)) throw ConfigError("n and N must be positive");
  const double log_term = std::log(2.0 * grid_size / alpha);
  if (!(log_term > 0.0)) return 0.0;
  const double D = static_cast<double>(kernel.dim);
  return std::pow(kernel.k0 / kernel.bandwidth, D) * std::sqrt(log_term / (2.0 * n));
}

double upper_quantile(std::vector<double> values, double alpha) {
  if (values.empty()) throw ConfigError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double limit = alpha * static_cast<double>(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto above = static_cast<double>(
        values.end() - std::upper_bound(values.begin(), values.end(), values[k]));
    if (above <= limit) return values[k];
  }
  return values.back();
}

struct KdeResampler::Factors {
  AxisFactors axis;
};

KdeResampler::KdeResampler(const PointCloud& cloud, const KernelSpec& kernel,
                           const GridGeometry& grid)
    : cloud_(cloud), kernel_(kernel), grid_(grid) {
  check_inputs(cloud, kernel, grid);
  if (kernel.kind == KernelKind::kGaussian) {
    factors_ = std::make_unique<Factors>();
    factors_->axis = gaussian_factors(cloud, kernel.bandwidth, grid);
    full_ = GridField(grid, accumulate_separable(factors_->axis, grid,
                                                 identity_indices(cloud.size())));
  } else {
    full_ = kde_direct(cloud, kernel, grid);
  }
}

KdeResampler::~KdeResampler() = default;

GridField KdeResampler::resample(const std::vector<std::size_t>& indices) const {
  if (indices.empty()) throw ConfigError("resample of no points");
  if (factors_) {
    return GridField(grid_, accumulate_separable(factors_->axis, grid_, indices));
  }
  return kde_direct(cloud_.subset(indices), kernel_, grid_);
}

BandResult bootstrap_band(const PointCloud& cloud, const KernelSpec& kernel,
                          const GridGeometry& grid, double alpha, std::size_t replicates,
                          std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (replicates < 1) throw ConfigError("bootstrap needs at least one replicate");
  const std::size_t n = cloud.size();
  const KdeResampler kde_engine(cloud, kernel, grid);
  const auto& base = kde_engine.full().values;
  const auto& k = simd::kernels();
  std::vector<double> sups(replicates);
  for (std::size_t j = 0; j < replicates; ++j) {
    Rng rng = substream(seed, StreamTag::kBootstrap, j);
    const auto star = kde_engine.resample(bootstrap_indices(rng, n));
    sups[j] = k.max_abs_diff(star.values.data(), base.data(), base.size());
  }
  const double c = upper_quantile(sups, alpha);
  const double root = std::sqrt(static_cast<double>(n) *
                                std::pow(kernel.bandwidth, static_cast<double>(kernel.dim)));
  BandResult band;
  band.method = "density_bootstrap";
  band.alpha = alpha;
  band.c = c;
  band.diagnostics["Z_alpha"] = root * c;
  band.diagnostics["B"] = static_cast<double>(replicates);
  band.diagnostics["n"] = static_cast<double>(n);
  band.diagnostics["h"] = kernel.bandwidth;
  band.diagnostics["kernel"] = std::string(kernel_kind_name(kernel.kind));
  band.diagnostics["grid_size"] = static_cast<double>(grid.vertex_count());
  band.diagnostics["seed"] = std::to_string(seed);
  return band;
}

PersistenceDiagram density_diagram(const GridField& field) {
  const Filtration filt = lower_star_filtration(field, Sweep::kSuperlevel);
  const PersistenceDiagram raw = reduce(filt);
  const double cap = std::min(0.0, *std::min_element(field.values.begin(), field.values.end()));
  PersistenceDiagram out;
  out.pairs.reserve(raw.pairs.size());
  for (const auto& p : raw.pairs) {
    PersistencePair q{p.dim, -p.birth, p.essential() ? cap : -p.death};
    if (p.essential() && p.dim > 0) q.death = kInfinity;
    out.pairs.push_back(q);
  }
  return out.canonical();
}

}  // namespace topoconf
