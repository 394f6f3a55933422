// Baseline SIMD lane: native vector width of the default target
// (SSE2 on x86-64, NEON on aarch64).

#include "kernels_simd_impl.hpp"
#include "kernels_lanes.hpp"

namespace liouville::kernels {

const Ops* simd128_lane() {
  static const Ops ops = make_lane_ops("simd128");
  return &ops;
}

}  // namespace liouville::kernels
