// AVX2 lane: this file is compiled with -mavx2, so native_simd<double> is
// 4 wide here. avx2_lane() itself only hands out pointers; callers gate on
// __builtin_cpu_supports("avx2") before invoking any of them.

#include "kernels_simd_impl.hpp"
#include "kernels_lanes.hpp"

namespace liouville::kernels {

const Ops* avx2_lane() {
  static const Ops ops = make_lane_ops("avx2");
  return &ops;
}

}  // namespace liouville::kernels
