#include "topoconf/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "topoconf/density.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/random.hpp"
#include "topoconf/solve.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

namespace {

constexpr double kBracketLo = 1e-8;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(v[k]);
  }
  return out;
}

}  // namespace

std::size_t default_subsample_size(std::size_t n) {
  if (n < 3) throw ConfigError("subsampling needs at least 3 points");
  const double l = std::log(static_cast<double>(n));
  const auto b = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / (l * l)));
  return std::clamp<std::size_t>(b, 1, n - 1);
}

BandResult subsample_band(const PointCloud& cloud, std::size_t b, std::size_t reps,
                          double alpha, std::uint64_t seed) {
  check_alpha(alpha);
  const std::size_t n = cloud.size();
  if (b < 1 || b >= n) throw ConfigError("subsample size must satisfy 1 <= b < n");
  if (reps < 1) throw ConfigError("subsampling needs at least one replicate");
  std::vector<double> t(reps);
  for (std::size_t j = 0; j < reps; ++j) {
    Rng rng = substream(seed, StreamTag::kSubsample, j);
    const auto idx = sample_without_replacement(rng, n, b);
    t[j] = hausdorff(cloud.subset(idx), cloud);
  }
  const double q = upper_quantile(t, alpha);
  BandResult band;
  band.method = "subsample";
  band.alpha = alpha;
  band.c = 2.0 * q;
  band.diagnostics["b"] = static_cast<double>(b);
  band.diagnostics["reps"] = static_cast<double>(reps);
  band.diagnostics["n"] = static_cast<double>(n);
  band.diagnostics["quantile"] = q;
  band.diagnostics["T_max"] = *std::max_element(t.begin(), t.end());
  band.diagnostics["seed"] = std::to_string(seed);
  return band;
}

double lambert_lhs(double t, double rho, double n, int d) {
  const double td = std::pow(t, d);
  return std::pow(2.0, d + 1) / (td * rho) * std::exp(-n * rho * td / 2.0);
}

double lambert_solve(double rho, double n, int d, double alpha, double t_max) {
  check_alpha(alpha);
  if (!(rho > 0.0) || !(n > 0.0) || d < 1) {
    throw ConfigError("lambert_solve needs rho > 0, n > 0, d >= 1");
  }
  const double D = d;
  const double log_rhs = std::log(alpha);
  auto f = [&](double t) {
    return (D + 1.0) * std::numbers::ln2 - D * std::log(t) - std::log(rho) -
           n * rho * std::pow(t, D) / 2.0 - log_rhs;
  };
  if (std::isinf(t_max)) t_max = expand_upper(f, 1.0, "lambert_solve");
  return bisect_decreasing(f, {kBracketLo, t_max}, "lambert_solve");
}

SplitHalves split_halves(std::size_t n, std::uint64_t seed) {
  Rng rng = substream(seed, StreamTag::kSplit);
  auto perm = random_permutation(rng, n);
  SplitHalves h;
  h.estimate.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n / 2));
  h.evaluate.assign(perm.begin() + static_cast<std::ptrdiff_t>(n / 2), perm.end());
  std::sort(h.estimate.begin(), h.estimate.end());
  std::sort(h.evaluate.begin(), h.evaluate.end());
  return h;
}

BandResult concentration_band(const PointCloud& cloud, const DensityParams& params,
                              double alpha, bool split, std::uint64_t seed) {
  check_alpha(alpha);
  params.validate(cloud.dim());
  const std::size_t n = cloud.size();
  if (n < 2) throw ConfigError("concentration band needs at least 2 points");
  if (split && n % 2 != 0) throw ConfigError("split needs an even sample size");
  BandResult band;
  band.alpha = alpha;
  double rho = 0.0, n_eq = 0.0;
  if (split) {
    const auto halves = split_halves(n, seed);
    rho = rho_hat(cloud.subset(halves.estimate), params);
    n_eq = static_cast<double>(halves.evaluate.size());
    band.method = "concentration_split";
    band.diagnostics["estimation_indices"] = join_indices(halves.estimate);
    band.diagnostics["band_applies_to"] = std::string("evaluate_half");
    band.diagnostics["seed"] = std::to_string(seed);
  } else {
    rho = rho_hat(cloud, params);
    n_eq = static_cast<double>(n);
    band.method = "concentration";
  }
  const double t_max = diameter(cloud);
  band.c = lambert_solve(rho, n_eq, params.intrinsic_dim, alpha, t_max);
  band.diagnostics["rho_hat"] = rho;
  band.diagnostics["r_n"] = params.radius;
  band.diagnostics["d"] = static_cast<double>(params.intrinsic_dim);
  band.diagnostics["n_equation"] = n_eq;
  band.diagnostics["t_max"] = t_max;
  band.diagnostics["residual"] =
      std::abs(lambert_lhs(band.c, rho, n_eq, params.intrinsic_dim) - alpha);
  return band;
}

BandResult conservative_band(const PointCloud& cloud, const DensityParams& params,
                             double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  params.validate(cloud.dim());
  const double n = static_cast<double>(cloud.size());
  const double rho = rho_hat(cloud, params);
  const double log_term = std::log(n / alpha);
  BandResult band;
  band.method = "conservative";
  band.alpha = alpha;
  band.c = log_term > 0.0
               ? std::pow(2.0 / (n * rho) * log_term, 1.0 / params.intrinsic_dim)
               : 0.0;
  band.diagnostics["rho_hat"] = rho;
  band.diagnostics["r_n"] = params.radius;
  band.diagnostics["d"] = static_cast<double>(params.intrinsic_dim);
  return band;
}

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double ShellDensityEstimate::density(double v) const {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (double s : samples) sum += normal_pdf((v - s) / bandwidth);
  return sum / (static_cast<double>(samples.size()) * bandwidth);
}

double ShellDensityEstimate::mass(double lo, double hi) const {
  if (samples.empty() || !(hi > lo)) return 0.0;
  double sum = 0.0;
  for (double s : samples) {
    sum += normal_cdf((hi - s) / bandwidth) - normal_cdf((lo - s) / bandwidth);
  }
  return sum / static_cast<double>(samples.size());
}

double default_shell_bandwidth(const std::vector<double>& samples, int d) {
  if (samples.size() < 2) throw ConfigError("shell bandwidth needs at least 2 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  // Constant samples have no spread; fall back to their common value.
  const double scale = sd > 0.0 ? sd : mean;
  return std::pow(default_rn(n, d), 0.25) * scale;
}

ShellDensityEstimate shell_g_hat(const PointCloud& cloud, const DensityParams& params,
                                 double b_shell) {
  if (!(b_shell >= 0.0) || !std::isfinite(b_shell)) {
    throw ConfigError("shell bandwidth must be positive, or 0 for the default");
  }
  ShellDensityEstimate g;
  g.samples = local_densities(cloud, params);
  if (g.samples.empty()) throw ConfigError("shell estimate of an empty cloud");
  if (b_shell == 0.0) b_shell = default_shell_bandwidth(g.samples, params.intrinsic_dim);
  g.bandwidth = b_shell;
  g.rho_hat = *std::min_element(g.samples.begin(), g.samples.end());
  const double top = *std::max_element(g.samples.begin(), g.samples.end());
  const double lo = g.rho_hat - 4.0 * b_shell, hi = top + 4.0 * b_shell;
  constexpr std::size_t kPoints = 512;
  g.grid.resize(kPoints);
  g.values.resize(kPoints);
  for (std::size_t k = 0; k < kPoints; ++k) {
    g.grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kPoints - 1);
    g.values[k] = g.density(g.grid[k]);
  }
  return g;
}

double shells_solve(const std::function<double(double)>& integral, int d, double alpha,
                    double t_max) {
  check_alpha(alpha);
  if (d < 1) throw ConfigError("intrinsic dimension must be >= 1");
  const double D = d;
  const double log_rhs = std::log(alpha);
  auto f = [&](double t) {
    return (D + 1.0) * std::numbers::ln2 - D * std::log(t) + std::log(integral(t)) - log_rhs;
  };
  return bisect_decreasing(f, {kBracketLo, t_max}, "shells_band");
}

double shell_integral(const ShellDensityEstimate& g, double n, int d, double t) {
  // Distinct V values with multiplicities keep each integrand call cheap.
  std::vector<double> v = g.samples;
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> atoms;
  for (double x : v) {
    if (!atoms.empty() && atoms.back().first == x) atoms.back().second += 1.0;
    else atoms.emplace_back(x, 1.0);
  }
  const double norm = 1.0 / (static_cast<double>(v.size()) * g.bandwidth);
  const double rate = n * std::pow(t, d) / 2.0;
  auto integrand = [&](double x) {
    double s = 0.0;
    for (const auto& [c, w] : atoms) s += w * normal_pdf((x - c) / g.bandwidth);
    return s * norm / x * std::exp(-rate * (x - g.rho_hat));
  };
  // The exponential is factored at rho_hat so the integrand stays O(1);
  // breakpoints follow its decay length near the lower end and the kernel
  // width elsewhere.
  const double a = g.rho_hat;
  const double b = v.back() + 12.0 * g.bandwidth;
  const double decay = 1.0 / rate;
  std::vector<double> cuts{a, b};
  for (double step = decay / 4.0; a + step < b; step *= 2.0) cuts.push_back(a + step);
  for (double x = a + g.bandwidth / 2.0; x < b; x += g.bandwidth / 2.0) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0, err_total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, cuts[k], cuts[k + 1], 10, 1e-12, &err);
    err_total += err;
  }
  if (!std::isfinite(total) || err_total > 1e-8 * std::abs(total) + 1e-300) {
    throw NumericalError("shells_band: quadrature did not converge");
  }
  return total * std::exp(-rate * a);
}

BandResult shells_band(const PointCloud& cloud, const DensityParams& params, double alpha,
                       bool split, std::uint64_t seed, double b_shell) {
  check_alpha(alpha);
  params.validate(cloud.dim());
  const std::size_t n = cloud.size();
  if (n < 2) throw ConfigError("shells band needs at least 2 points");
  if (split && n % 2 != 0) throw ConfigError("split needs an even sample size");
  BandResult band;
  band.alpha = alpha;
  double n_eq = static_cast<double>(n);
  ShellDensityEstimate g;
  if (split) {
    const auto halves = split_halves(n, seed);
    n_eq = static_cast<double>(halves.evaluate.size());
    g = shell_g_hat(cloud.subset(halves.estimate), params, b_shell);
    band.method = "shells_split";
    band.diagnostics["estimation_indices"] = join_indices(halves.estimate);
    band.diagnostics["band_applies_to"] = std::string("evaluate_half");
    band.diagnostics["seed"] = std::to_string(seed);
  } else {
    g = shell_g_hat(cloud, params, b_shell);
    band.method = "shells";
  }
  const int d = params.intrinsic_dim;
  const double t_max = diameter(cloud);
  auto integral = [&](double t) { return shell_integral(g, n_eq, d, t); };
  band.c = shells_solve(integral, d, alpha, t_max);
  const double lhs = std::pow(2.0, d + 1) / std::pow(band.c, d) * integral(band.c);
  band.diagnostics["rho_hat"] = g.rho_hat;
  band.diagnostics["r_n"] = params.radius;
  band.diagnostics["b_shell"] = g.bandwidth;
  band.diagnostics["d"] = static_cast<double>(d);
  band.diagnostics["n_equation"] = n_eq;
  band.diagnostics["t_max"] = t_max;
  band.diagnostics["residual"] = std::abs(lhs - alpha);
  return band;
}

FeatureSplit significant_features(const PersistenceDiagram& diagram, const BandResult& band) {
  FeatureSplit out;
  for (const auto& p : diagram.pairs) {
    if (p.essential() || p.persistence() / 2.0 > band.c) out.signal.pairs.push_back(p);
    else out.noise.pairs.push_back(p);
  }
  return out;
}

}  // namespace topoconf
