// Lane body for the std::experimental::simd kernel variants. Included by one
// .cpp per lane; the including file controls the target flags (baseline SSE2/
// NEON vs -mavx2), which fixes the native vector width for that translation
// unit. Everything here has internal linkage so the lanes cannot collide.

#include <cstddef>
#include <experimental/simd>

#include "kernels_formulas.hpp"
#include "liouville/kernels.hpp"

namespace {

namespace stdx = std::experimental;
using simd_d = stdx::native_simd<double>;

struct simd_math {
  static simd_d pow(const simd_d& x, const simd_d& y) { return stdx::pow(x, y); }
  static simd_d log1p(const simd_d& x) { return stdx::log1p(x); }
  static simd_d sqrt(const simd_d& x) { return stdx::sqrt(x); }
  static simd_d guarded_div(const simd_d& num, const simd_d& den) {
    simd_d q = num / den;
    where(den == 0.0, q) = 0.0;
    return q;
  }
};

using liouville::kernels::FamilyParams;
using liouville::kernels::Ops;
namespace kd = liouville::kernels::detail;

// Applies the shared formula body V-wide over the batch; the tail that does
// not fill a vector register goes through the identical scalar body.
template <simd_d Fv(const FamilyParams&, simd_d), double Fs(const FamilyParams&, double)>
void map_batch(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  constexpr std::size_t W = simd_d::size();
  std::size_t i = 0;
  for (; i + W <= k; i += W) {
    simd_d rv;
    rv.copy_from(r + i, stdx::element_aligned);
    Fv(p, rv).copy_to(out + i, stdx::element_aligned);
  }
  for (; i < k; ++i) out[i] = Fs(p, r[i]);
}

simd_d u_v(const FamilyParams& p, simd_d r) { return kd::family_u_v<simd_d, simd_math>(p, r); }
simd_d exp_u_v(const FamilyParams& p, simd_d r) { return kd::family_exp_u_v<simd_d, simd_math>(p, r); }
simd_d slope_v(const FamilyParams& p, simd_d r) { return kd::family_slope_v<simd_d, simd_math>(p, r); }
simd_d grad_v(const FamilyParams& p, simd_d r) { return kd::family_grad_mag_v<simd_d, simd_math>(p, r); }
simd_d flux_v(const FamilyParams& p, simd_d r) { return kd::family_flux_v<simd_d, simd_math>(p, r); }

double u_s(const FamilyParams& p, double r) { return kd::family_u_v<double>(p, r); }
double exp_u_s(const FamilyParams& p, double r) { return kd::family_exp_u_v<double>(p, r); }
double slope_s(const FamilyParams& p, double r) { return kd::family_slope_v<double>(p, r); }
double grad_s(const FamilyParams& p, double r) { return kd::family_grad_mag_v<double>(p, r); }
double flux_s(const FamilyParams& p, double r) { return kd::family_flux_v<double>(p, r); }

void u_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  map_batch<u_v, u_s>(p, r, out, k);
}
void exp_u_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  map_batch<exp_u_v, exp_u_s>(p, r, out, k);
}
void slope_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  map_batch<slope_v, slope_s>(p, r, out, k);
}
void grad_mag_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  map_batch<grad_v, grad_s>(p, r, out, k);
}
void flux_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  map_batch<flux_v, flux_s>(p, r, out, k);
}

void radii_kernel(const double* const* coords, const double* center, int dim,
                  double* out, std::size_t k) {
  constexpr std::size_t W = simd_d::size();
  std::size_t i = 0;
  for (; i + W <= k; i += W) {
    simd_d acc(0.0);
    for (int d = 0; d < dim; ++d) {
      simd_d x;
      x.copy_from(coords[d] + i, stdx::element_aligned);
      const simd_d dx = x - simd_d(center[d]);
      acc += dx * dx;
    }
    stdx::sqrt(acc).copy_to(out + i, stdx::element_aligned);
  }
  for (; i < k; ++i) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double dx = coords[d][i] - center[d];
      s += dx * dx;
    }
    out[i] = std::sqrt(s);
  }
}

Ops make_lane_ops(const char* name) {
  return Ops{name,      u_kernel,        exp_u_kernel, slope_kernel,
             grad_mag_kernel, flux_kernel, radii_kernel};
}

}  // namespace
