#include "kernels_impl.hpp"

#include <cmath>
#include <limits>

namespace topoconf::simd::detail {
namespace {

inline double squared_distance_at(const double* const* axes, std::size_t dim,
                                  std::size_t i, const double* query) {
  double acc = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    const double d = axes[a][i] - query[a];
    acc = acc + d * d;
  }
  return acc;
}

void squared_distances(const double* const* axes, std::size_t dim,
                       std::size_t n, const double* query, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = squared_distance_at(axes, dim, i, query);
  }
}

double min_squared_distance(const double* const* axes, std::size_t dim,
                            std::size_t n, const double* query) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = squared_distance_at(axes, dim, i, query);
    if (s < best) best = s;
  }
  return best;
}

std::size_t count_within(const double* const* axes, std::size_t dim,
                         std::size_t n, const double* query, double radius2) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (squared_distance_at(axes, dim, i, query) <= radius2) ++count;
  }
  return count;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable kScalarTable{Backend::kScalar,  "scalar",
                               squared_distances, min_squared_distance,
                               count_within,      axpy,
                               max_abs_diff};

}  // namespace topoconf::simd::detail
