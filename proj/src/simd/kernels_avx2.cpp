#include "kernels_impl.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

#ifndef __AVX2__
#error kernels_avx2.cpp must be compiled with -mavx2
#endif

namespace topoconf::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d squared_distance4(const double* const* axes, std::size_t dim,
                                 std::size_t i, const double* query) {
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t a = 0; a < dim; ++a) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(axes[a] + i), _mm256_set1_pd(query[a]));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
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
    _mm256_storeu_pd(out + i, squared_distance4(axes, dim, i, query));
  }
  for (; i < n; ++i) out[i] = squared_distance1(axes, dim, i, query);
}

double min_squared_distance(const double* const* axes, std::size_t dim,
                            std::size_t n, const double* query) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= kLanes) {
    __m256d vbest = _mm256_set1_pd(best);
    for (; i + kLanes <= n; i += kLanes) {
      vbest = _mm256_min_pd(vbest, squared_distance4(axes, dim, i, query));
    }
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, vbest);
    for (double v : lanes) {
      if (v < best) best = v;
    }
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
  const __m256d r2 = _mm256_set1_pd(radius2);
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d le =
        _mm256_cmp_pd(squared_distance4(axes, dim, i, query), r2, _CMP_LE_OQ);
    count += static_cast<std::size_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(le))));
  }
  for (; i < n; ++i) {
    if (squared_distance1(axes, dim, i, query) <= radius2) ++count;
  }
  return count;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= kLanes) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d vbest = _mm256_setzero_pd();
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d d =
          _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
      vbest = _mm256_max_pd(vbest, _mm256_andnot_pd(sign, d));
    }
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, vbest);
    for (double v : lanes) {
      if (v > best) best = v;
    }
  }
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable kAvx2Table{Backend::kAvx2,    "avx2",
                             squared_distances, min_squared_distance,
                             count_within,      axpy,
                             max_abs_diff};

}  // namespace topoconf::simd::detail
