#pragma once

// Point clouds, Euclidean and Hausdorff distances, and the small-ball mass
// estimator used by the concentration and shells bands.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topoconf {

/// Finite multiset of points in R^D. Coordinates are stored axis-major so the
/// distance kernels can stream one axis at a time.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return n_ == 0; }

  double coord(std::size_t i, std::size_t axis) const { return axes_[axis][i]; }
  std::vector<double> point(std::size_t i) const;
  void push_back(std::span<const double> p);

  const std::vector<double>& axis(std::size_t a) const { return axes_[a]; }
  std::vector<const double*> axis_pointers() const;

  PointCloud subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t n_ = 0;
  std::vector<std::vector<double>> axes_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// sup over points of `from` of the distance to the nearest point of `to`.
double directed_hausdorff(const PointCloud& from, const PointCloud& to);

/// Symmetric Hausdorff distance. Throws ConfigError on empty input or
/// mismatched ambient dimension.
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Largest pairwise distance; 0 for fewer than two points.
double diameter(const PointCloud& cloud);

/// Row-major n x n matrix of Euclidean distances.
std::vector<double> pairwise_distances(const PointCloud& cloud);

struct DensityParams {
  int intrinsic_dim = 1;  // d
  double radius = 0.0;    // r_n

  /// Throws ConfigError unless 1 <= d <= ambient_dim and r_n > 0.
  void validate(std::size_t ambient_dim) const;
};

/// P_n(B(x, r_n/2)) / r_n^d.
double local_density(const PointCloud& cloud, std::span<const double> x,
                     const DensityParams& params);

/// local_density evaluated at every sample point, in sample order.
std::vector<double> local_densities(const PointCloud& cloud,
                                    const DensityParams& params);

/// min_i P_n(B(X_i, r_n/2)) / r_n^d.
double rho_hat(const PointCloud& cloud, const DensityParams& params);

/// (ln n / n)^(1/(d+2)); throws ConfigError for n < 2 or d < 1.
double default_rn(double n, int d);

/// One point per line, comma-separated coordinates, no header.
PointCloud parse_point_cloud_csv(std::string_view text);
std::string format_point_cloud_csv(const PointCloud& cloud);
PointCloud read_point_cloud_csv(const std::string& path);
void write_point_cloud_csv(const PointCloud& cloud, const std::string& path);

}  // namespace topoconf
