#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "topoconf/band.hpp"
#include "topoconf/geometry.hpp"
#include "topoconf/persistence.hpp"

namespace topoconf {

/// ceil(n / ln(n)^2), at least 1 and below n.
std::size_t default_subsample_size(std::size_t n);

/// Method I. c = 2 * upper alpha-quantile of H(subsample, cloud) over `reps`
/// subsamples of size b drawn without replacement.
BandResult subsample_band(const PointCloud& cloud, std::size_t b, std::size_t reps,
                          double alpha, std::uint64_t seed);

/// 2^(d+1) / (t^d rho) exp(-n rho t^d / 2).
double lambert_lhs(double t, double rho, double n, int d);

/// t solving lambert_lhs = alpha on [1e-8, t_max]. An infinite t_max grows
/// the bracket by doubling. Throws NumericalError without a sign change.
double lambert_solve(double rho, double n, int d, double alpha, double t_max = kInfinity);

/// Random partition of [0, n) into two halves of size floor(n/2) and the rest.
struct SplitHalves {
  std::vector<std::size_t> estimate;
  std::vector<std::size_t> evaluate;
};
SplitHalves split_halves(std::size_t n, std::uint64_t seed);

/// Method II. With `split`, rho is estimated on one half and the equation is
/// solved with the other half's size; the band then applies to the diagram of
/// the `evaluate` half of split_halves(n, seed).
BandResult concentration_band(const PointCloud& cloud, const DensityParams& params,
                              double alpha, bool split, std::uint64_t seed);

/// ((2 / (n rho)) log(n / alpha))^(1/d); 0 when the logarithm is not positive.
BandResult conservative_band(const PointCloud& cloud, const DensityParams& params,
                             double alpha);

/// Gaussian kernel density estimate of the local densities V_i.
struct ShellDensityEstimate {
  std::vector<double> samples;  // V_i in sample order
  double bandwidth = 0.0;
  double rho_hat = 0.0;         // min V_i
  std::vector<double> grid;     // evaluation points
  std::vector<double> values;   // g-hat on grid

  double density(double v) const;
  /// Integral of g-hat over [lo, hi], exact through the normal CDF.
  double mass(double lo, double hi) const;
};

/// r_n^(1/4) times the sample standard deviation of the V_i, with
/// r_n = default_rn(#samples, d). The scale factor puts the bandwidth in the
/// units of V.
double default_shell_bandwidth(const std::vector<double>& samples, int d);

/// b_shell == 0 selects default_shell_bandwidth.
ShellDensityEstimate shell_g_hat(const PointCloud& cloud, const DensityParams& params,
                                 double b_shell = 0.0);

/// The shells equation 2^(d+1)/t^d * I(t) = alpha, where I(t) is the
/// supplied shell integral. Solved by bisection on [1e-8, t_max].
double shells_solve(const std::function<double(double)>& integral, int d, double alpha,
                    double t_max);

/// Integral over v >= rho_hat of g-hat(v)/v exp(-n v t^d / 2), by adaptive
/// Gauss-Kronrod quadrature. Throws NumericalError when it does not converge.
double shell_integral(const ShellDensityEstimate& g, double n, int d, double t);

/// Method III. b_shell == 0 selects default_shell_bandwidth.
BandResult shells_band(const PointCloud& cloud, const DensityParams& params, double alpha,
                       bool split, std::uint64_t seed, double b_shell = 0.0);

struct FeatureSplit {
  PersistenceDiagram signal;
  PersistenceDiagram noise;
};

/// Signal iff essential or |death - birth|/2 > band.c.
FeatureSplit significant_features(const PersistenceDiagram& diagram, const BandResult& band);

}  // namespace topoconf
