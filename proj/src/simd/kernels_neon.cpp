#include "kernels_impl.hpp"

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace topoconf::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

inline float64x2_t squared_distance2(const double* const* axes,
                                     std::size_t dim, std::size_t i,
                                     const double* query) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t a = 0; a < dim; ++a) {
    const float64x2_t d = vsubq_f64(vld1q_f64(axes[a] + i), vdupq_n_f64(query[a]));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  return acc;
}

inline double squared_distance1(const double* const* axes, std::size_t dim,
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
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vst1q_f64(out + i, squared_distance2(axes, dim, i, query));
  }
  for (; i < n; ++i) out[i] = squared_distance1(axes, dim, i, query);
}

double min_squared_distance(const double* const* axes, std::size_t dim,
                            std::size_t n, const double* query) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= kLanes) {
    float64x2_t vbest = vdupq_n_f64(best);
    for (; i + kLanes <= n; i += kLanes) {
      vbest = vminq_f64(vbest, squared_distance2(axes, dim, i, query));
    }
    best = vminvq_f64(vbest);
  }
  for (; i < n; ++i) {
    const double s = squared_distance1(axes, dim, i, query);
    if (s < best) best = s;
  }
  return best;
}

std::size_t count_within(const double* const* axes, std::size_t dim,
                         std::size_t n, const double* query, double radius2) {
  std::size_t count = 0;
  std::size_t i = 0;
  const float64x2_t r2 = vdupq_n_f64(radius2);
  for (; i + kLanes <= n; i += kLanes) {
    const uint64x2_t le = vcleq_f64(squared_distance2(axes, dim, i, query), r2);
    count += static_cast<std::size_t>((vgetq_lane_u64(le, 0) & 1U) +
                                      (vgetq_lane_u64(le, 1) & 1U));
  }
  for (; i < n; ++i) {
    if (squared_distance1(axes, dim, i, query) <= radius2) ++count;
  }
  return count;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= kLanes) {
    float64x2_t vbest = vdupq_n_f64(0.0);
    for (; i + kLanes <= n; i += kLanes) {
      vbest = vmaxq_f64(vbest, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    best = vmaxvq_f64(vbest);
  }
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable kNeonTable{Backend::kNeon,    "neon",
                             squared_distances, min_squared_distance,
                             count_within,      axpy,
                             max_abs_diff};

}  // namespace topoconf::simd::detail
