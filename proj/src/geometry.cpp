#include "topoconf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topoconf/errors.hpp"
#include "topoconf/simd/kernels.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

PointCloud::PointCloud(std::size_t dim) : dim_(dim), axes_(dim) {
  if (dim == 0) throw ConfigError("point cloud dimension must be positive");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ConfigError("point cloud needs at least one row");
  PointCloud cloud(rows.front().size());
  for (const auto& r : rows) cloud.push_back(r);
  return cloud;
}

std::vector<double> PointCloud::point(std::size_t i) const {
  std::vector<double> p(dim_);
  for (std::size_t a = 0; a < dim_; ++a) p[a] = axes_[a][i];
  return p;
}

void PointCloud::push_back(std::span<const double> p) {
  if (p.size() != dim_) {
    throw ConfigError("point has " + std::to_string(p.size()) +
                      " coordinates, cloud dimension is " +
                      std::to_string(dim_));
  }
  for (std::size_t a = 0; a < dim_; ++a) axes_[a].push_back(p[a]);
  ++n_;
}

std::vector<const double*> PointCloud::axis_pointers() const {
  std::vector<const double*> ptrs(dim_);
  for (std::size_t a = 0; a < dim_; ++a) ptrs[a] = axes_[a].data();
  return ptrs;
}

PointCloud PointCloud::subset(std::span<const std::size_t> indices) const {
  PointCloud out(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    out.axes_[a].reserve(indices.size());
    for (std::size_t i : indices) out.axes_[a].push_back(axes_[a][i]);
  }
  out.n_ = indices.size();
  return out;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = b[k] - a[k];
    acc = acc + d * d;
  }
  return std::sqrt(acc);
}

namespace {

void require_compatible(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw ConfigError("Hausdorff distance of an empty cloud");
  if (a.dim() != b.dim()) {
    throw ConfigError("ambient dimension mismatch: " + std::to_string(a.dim()) +
                      " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

double directed_hausdorff(const PointCloud& from, const PointCloud& to) {
  require_compatible(from, to);
  const auto& k = simd::kernels();
  const auto axes = to.axis_pointers();
  std::vector<double> q(from.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (std::size_t a = 0; a < from.dim(); ++a) q[a] = from.coord(i, a);
    worst = std::max(worst, k.min_squared_distance(axes.data(), to.dim(),
                                                   to.size(), q.data()));
  }
  return std::sqrt(worst);
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<double> pairwise_distances(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  std::vector<double> out(n * n);
  const auto& k = simd::kernels();
  const auto axes = cloud.axis_pointers();
  std::vector<double> q(cloud.dim());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < cloud.dim(); ++a) q[a] = cloud.coord(i, a);
    double* row = out.data() + i * n;
    k.squared_distances(axes.data(), cloud.dim(), n, q.data(), row);
    for (std::size_t j = 0; j < n; ++j) row[j] = std::sqrt(row[j]);
  }
  // The kernel computes (x_j - x_i)^2 and (x_i - x_j)^2, which are equal,
  // so the matrix is exactly symmetric.
  return out;
}

double diameter(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 2) return 0.0;
  const auto& k = simd::kernels();
  const auto axes = cloud.axis_pointers();
  std::vector<double> q(cloud.dim());
  std::vector<double> row(n);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < cloud.dim(); ++a) q[a] = cloud.coord(i, a);
    k.squared_distances(axes.data(), cloud.dim(), n, q.data(), row.data());
    best = std::max(best, *std::max_element(row.begin(), row.end()));
  }
  return std::sqrt(best);
}

void DensityParams::validate(std::size_t ambient_dim) const {
  if (intrinsic_dim < 1 || static_cast<std::size_t>(intrinsic_dim) > ambient_dim) {
    throw ConfigError("intrinsic dimension d=" + std::to_string(intrinsic_dim) +
                      " must satisfy 1 <= d <= " + std::to_string(ambient_dim));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("radius r_n must be a positive finite number");
  }
}

namespace {

double local_density_unchecked(const PointCloud& cloud,
                               const std::vector<const double*>& axes,
                               const double* x, const DensityParams& params) {
  const double half = params.radius / 2.0;
  const std::size_t count = simd::kernels().count_within(
      axes.data(), cloud.dim(), cloud.size(), x, half * half);
  const double mass = static_cast<double>(count) / static_cast<double>(cloud.size());
  return mass / std::pow(params.radius, params.intrinsic_dim);
}

}  // namespace

double local_density(const PointCloud& cloud, std::span<const double> x,
                     const DensityParams& params) {
  params.validate(cloud.dim());
  if (cloud.empty()) throw ConfigError("local density of an empty cloud");
  if (x.size() != cloud.dim()) throw ConfigError("query point dimension mismatch");
  return local_density_unchecked(cloud, cloud.axis_pointers(), x.data(), params);
}

std::vector<double> local_densities(const PointCloud& cloud,
                                    const DensityParams& params) {
  params.validate(cloud.dim());
  if (cloud.empty()) throw ConfigError("local density of an empty cloud");
  const auto axes = cloud.axis_pointers();
  std::vector<double> out(cloud.size());
  std::vector<double> q(cloud.dim());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t a = 0; a < cloud.dim(); ++a) q[a] = cloud.coord(i, a);
    out[i] = local_density_unchecked(cloud, axes, q.data(), params);
  }
  return out;
}

double rho_hat(const PointCloud& cloud, const DensityParams& params) {
  const auto v = local_densities(cloud, params);
  return *std::min_element(v.begin(), v.end());
}

double default_rn(double n, int d) {
  if (!(n >= 2.0)) throw ConfigError("default r_n needs n >= 2");
  if (d < 1) throw ConfigError("default r_n needs d >= 1");
  return std::pow(std::log(n) / n, 1.0 / (d + 2));
}

PointCloud parse_point_cloud_csv(std::string_view text) {
  PointCloud cloud;
  bool first = true;
  std::size_t line_no = 0;
  std::vector<double> row;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    row.clear();
    for (auto f : split_fields(line, ',')) row.push_back(parse_double(f));
    if (first) {
      cloud = PointCloud(row.size());
      first = false;
    } else if (row.size() != cloud.dim()) {
      throw IoError("line " + std::to_string(line_no) + " has " +
                    std::to_string(row.size()) + " columns, expected " +
                    std::to_string(cloud.dim()));
    }
    cloud.push_back(row);
  }
  if (first) throw IoError("point cloud file contains no points");
  return cloud;
}

std::string format_point_cloud_csv(const PointCloud& cloud) {
  std::string out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t a = 0; a < cloud.dim(); ++a) {
      if (a) out += ',';
      out += format_double(cloud.coord(i, a));
    }
    out += '\n';
  }
  return out;
}

PointCloud read_point_cloud_csv(const std::string& path) {
  return parse_point_cloud_csv(read_text_file(path));
}

void write_point_cloud_csv(const PointCloud& cloud, const std::string& path) {
  write_text_file(path, format_point_cloud_csv(cloud));
}

}  // namespace topoconf
