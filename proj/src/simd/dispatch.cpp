#include <atomic>

#include "kernels_impl.hpp"

namespace topoconf::simd {
namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(TOPOCONF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(TOPOCONF_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* best_available() {
  if (const KernelTable* t = kernels_for(Backend::kAvx2)) return t;
  if (const KernelTable* t = kernels_for(Backend::kNeon)) return t;
  return &detail::kScalarTable;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_kernels() { return detail::kScalarTable; }

const KernelTable* kernels_for(Backend backend) {
  if (!cpu_supports(backend)) return nullptr;
  switch (backend) {
    case Backend::kScalar:
      return &detail::kScalarTable;
    case Backend::kAvx2:
#if defined(TOPOCONF_HAVE_AVX2)
      return &detail::kAvx2Table;
#else
      return nullptr;
#endif
    case Backend::kNeon:
#if defined(TOPOCONF_HAVE_NEON)
      return &detail::kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& kernels() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    const KernelTable* best = best_available();
    g_active.compare_exchange_strong(t, best, std::memory_order_acq_rel);
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

bool set_active_backend(Backend backend) {
  const KernelTable* t = kernels_for(backend);
  if (t == nullptr) return false;
  g_active.store(t, std::memory_order_release);
  return true;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace topoconf::simd
