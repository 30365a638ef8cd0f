#pragma once

#include "topoconf/simd/kernels.hpp"

namespace topoconf::simd::detail {

extern const KernelTable kScalarTable;
#if defined(TOPOCONF_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(TOPOCONF_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace topoconf::simd::detail
