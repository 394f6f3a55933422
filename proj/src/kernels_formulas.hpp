#pragma once

// Formula bodies shared by the scalar and SIMD kernel lanes. Each lane
// instantiates these templates with its own vector type; keeping one body
// guarantees the lanes evaluate the identical expression tree.

#include <cmath>
#include <cstddef>

#include "liouville/constants.hpp"
#include "liouville/kernels.hpp"

namespace liouville::kernels::detail {

template <class V>
struct vmath;

template <>
struct vmath<double> {
  static double pow(double x, double y) { return std::pow(x, y); }
  static double log1p(double x) { return std::log1p(x); }
  static double sqrt(double x) { return std::sqrt(x); }
  // num/den with 0 where den == 0 (removable singularities)
  static double guarded_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }
};

// t = lambda^m r^m; every family quantity is a rational function of t.
template <class V, class M = vmath<V>>
inline V family_t(const FamilyParams& p, V r) {
  return V(p.a) * M::pow(r, V(p.m));
}

template <class V, class M = vmath<V>>
inline V family_u_v(const FamilyParams& p, V r) {
  return V(p.log_peak) - V(static_cast<double>(p.n)) * M::log1p(family_t<V, M>(p, r));
}

template <class V, class M = vmath<V>>
inline V family_exp_u_v(const FamilyParams& p, V r) {
  return V(p.peak) / powi(V(1.0) + family_t<V, M>(p, r), p.n);
}

template <class V, class M = vmath<V>>
inline V family_slope_v(const FamilyParams& p, V r) {
  const V t = family_t<V, M>(p, r);
  return V(p.beta) * t / (V(1.0) + t);
}

template <class V, class M = vmath<V>>
inline V family_grad_mag_v(const FamilyParams& p, V r) {
  // slope/r has a removable zero at r = 0 (m > 1 for every n >= 2)
  return M::guarded_div(family_slope_v<V, M>(p, r), r);
}

template <class V, class M = vmath<V>>
inline V family_flux_v(const FamilyParams& p, V r) {
  return -powi(family_slope_v<V, M>(p, r), p.n - 1);
}

}  // namespace liouville::kernels::detail
