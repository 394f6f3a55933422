#pragma once

// Internal lane registry hooks. Each lane lives in its own translation unit;
// the avx2 lane is compiled with -mavx2 and must only be fetched after the
// runtime CPU check in kernels.cpp.

#include "liouville/kernels.hpp"

namespace liouville::kernels {

#ifdef LIOUVILLE_HAVE_SIMD_LANE
const Ops* simd128_lane();
#endif

#ifdef LIOUVILLE_HAVE_AVX2_LANE
const Ops* avx2_lane();
#endif

}  // namespace liouville::kernels
