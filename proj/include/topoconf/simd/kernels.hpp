#pragma once

// Data-parallel inner loops. Every backend must produce results that are
// bit-identical to the scalar reference: lanes evaluate the same operations in
// the same order, and the build disables floating-point contraction.

#include <cstddef>
#include <string_view>

namespace topoconf::simd {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  const char* name;

  // out[i] = sum_a (axes[a][i] - query[a])^2, accumulated over a = 0..dim-1.
  void (*squared_distances)(const double* const* axes, std::size_t dim,
                            std::size_t n, const double* query, double* out);

  // min_i of the squared distance above; +inf when n == 0.
  double (*min_squared_distance)(const double* const* axes, std::size_t dim,
                                 std::size_t n, const double* query);

  // #{i : squared distance <= radius2}.
  std::size_t (*count_within)(const double* const* axes, std::size_t dim,
                              std::size_t n, const double* query,
                              double radius2);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // max_i |a[i] - b[i]|; 0 when n == 0.
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Kernel table for the requested backend, or nullptr when it was not
/// compiled in or the CPU lacks the instructions.
const KernelTable* kernels_for(Backend backend);

/// The process-wide active table. Picks the widest supported backend on first
/// use; the choice can be overridden with set_active_backend.
const KernelTable& kernels();

/// Returns false (and changes nothing) when the backend is unavailable.
bool set_active_backend(Backend backend);

std::string_view backend_name(Backend backend);

}  // namespace topoconf::simd
