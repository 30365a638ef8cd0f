#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "topoconf/band.hpp"
#include "topoconf/geometry.hpp"
#include "topoconf/grid.hpp"
#include "topoconf/persistence.hpp"

namespace topoconf {

enum class KernelKind {
  kGaussian,               // standard normal density
  kEpanechnikovSmoothed,   // biweight c (1 - r^2)^2 on r < 1
  kTriangular,             // c (1 - r) on r < 1
};

KernelKind parse_kernel_kind(std::string_view name);
std::string_view kernel_kind_name(KernelKind kind);

/// Radially symmetric kernel on R^D, normalized to integrate to 1, with
/// bandwidth h. K(0) is its peak and L its Lipschitz constant (in the
/// unscaled variable).
struct KernelSpec {
  KernelKind kind = KernelKind::kGaussian;
  double bandwidth = 0.3;
  std::size_t dim = 2;
  double k0 = 0.0;
  double lipschitz = 0.0;

  static KernelSpec make(KernelKind kind, double bandwidth, std::size_t dim);
  /// K(u) for |u| = r.
  double profile(double r) const;
};

/// Bounding box of the cloud inflated by 3h, `resolution` points per axis.
GridGeometry default_density_grid(const PointCloud& cloud, const KernelSpec& kernel,
                                  std::size_t resolution = 64);

/// (1/n) sum_i h^-D K(|x - X_i| / h) at every grid vertex.
GridField kde(const PointCloud& cloud, const KernelSpec& kernel, const GridGeometry& grid);

/// Same estimator evaluated point by point through the radial profile; the
/// reference for the separable Gaussian path used by kde.
GridField kde_direct(const PointCloud& cloud, const KernelSpec& kernel,
                     const GridGeometry& grid);

/// Evaluates the estimator on a fixed grid for the full cloud and for
/// resamples given as index lists. For the Gaussian kernel the per-axis
/// factors are computed once and reused.
class KdeResampler {
 public:
  KdeResampler(const PointCloud& cloud, const KernelSpec& kernel, const GridGeometry& grid);
  ~KdeResampler();
  KdeResampler(const KdeResampler&) = delete;
  KdeResampler& operator=(const KdeResampler&) = delete;

  const GridField& full() const { return full_; }
  /// Estimate from the multiset of points `indices` (repeats allowed).
  GridField resample(const std::vector<std::size_t>& indices) const;

 private:
  struct Factors;
  const PointCloud& cloud_;
  KernelSpec kernel_;
  GridGeometry grid_;
  std::unique_ptr<Factors> factors_;
  GridField full_;
};

/// 2 (4 C L sqrt(D) / (delta h^(D+1)))^D exp(-n delta^2 h^(2D) / (2 K(0)^2)).
double hoeffding_lhs(double n, const KernelSpec& kernel, double half_width, double delta);

/// delta solving hoeffding_lhs = alpha.
double hoeffding_band(double n, const KernelSpec& kernel, double half_width, double alpha);

/// (K(0)/h)^D sqrt(log(2N/alpha) / (2n)); 0 when the logarithm is not positive.
double grid_band(double n, const KernelSpec& kernel, double grid_size, double alpha);

/// Smallest observed T with #{T_j > T} <= alpha * B.
double upper_quantile(std::vector<double> values, double alpha);

/// Bootstrap estimate of the alpha upper quantile of sup |kde* - kde| over
/// the grid. c is that quantile; diagnostics carry Z = sqrt(n h^D) c.
BandResult bootstrap_band(const PointCloud& cloud, const KernelSpec& kernel,
                          const GridGeometry& grid, double alpha, std::size_t replicates,
                          std::uint64_t seed);

/// Upper-level-set persistence of the field: lower-star filtration of -f.
/// Births are the higher density value. The essential class of the global
/// maximum dies at min(0, min f).
PersistenceDiagram density_diagram(const GridField& field);

}  // namespace topoconf
