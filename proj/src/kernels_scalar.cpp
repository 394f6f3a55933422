#include <cmath>
#include <cstddef>

#include "kernels_formulas.hpp"
#include "liouville/kernels.hpp"

namespace liouville::kernels {
namespace {

using detail::family_exp_u_v;
using detail::family_flux_v;
using detail::family_grad_mag_v;
using detail::family_slope_v;
using detail::family_u_v;

void u_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = family_u_v<double>(p, r[i]);
}

void exp_u_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = family_exp_u_v<double>(p, r[i]);
}

void slope_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = family_slope_v<double>(p, r[i]);
}

void grad_mag_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = family_grad_mag_v<double>(p, r[i]);
}

void flux_kernel(const FamilyParams& p, const double* r, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = family_flux_v<double>(p, r[i]);
}

void radii_kernel(const double* const* coords, const double* center, int dim,
                  double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      const double dx = coords[d][i] - center[d];
      s += dx * dx;
    }
    out[i] = std::sqrt(s);
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",   u_kernel,        exp_u_kernel, slope_kernel,
                       grad_mag_kernel, flux_kernel, radii_kernel};
  return ops;
}

}  // namespace liouville::kernels
