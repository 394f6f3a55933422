#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace liouville::kernels {

/// Precomputed scalars for the explicit radial family
///   U(r) = log(c_n lambda^n) - n*log(1 + lambda^m r^m),   m = n/(n-1).
/// All batch kernels below read the profile only through this struct, so the
/// same kernels serve every (n, lambda) member.
struct FamilyParams {
  double m = 0.0;         // n/(n-1)
  double a = 0.0;         // lambda^m
  double log_peak = 0.0;  // log(c_n * lambda^n) = U at the center
  double peak = 0.0;      // c_n * lambda^n     = e^U at the center
  double beta = 0.0;      // n^2/(n-1) = n*m
  int n = 0;
};

// One vector lane: a named set of batch kernels over radii / point batches.
// Every entry computes the same mathematical map as the scalar reference;
// variants may differ by a few ulps at most and are equivalence-tested.
struct Ops {
  const char* name;
  // u[i] = U(r[i])
  void (*family_u)(const FamilyParams&, const double* r, double* u, std::size_t k);
  // eu[i] = e^{U(r[i])}
  void (*family_exp_u)(const FamilyParams&, const double* r, double* eu, std::size_t k);
  // s[i] = r|U'|(r[i]) = beta * t/(1+t),  t = a r^m   (the radial slope)
  void (*family_slope)(const FamilyParams&, const double* r, double* s, std::size_t k);
  // g[i] = |U'|(r[i])  (slope / r, 0 at r = 0)
  void (*family_grad_mag)(const FamilyParams&, const double* r, double* g, std::size_t k);
  // w[i] = r^{n-1}|U'|^{n-2}U'(r[i]) = -slope^{n-1}   (the flux variable)
  void (*family_flux)(const FamilyParams&, const double* r, double* w, std::size_t k);
  // out[i] = |x_i - center| for SoA coords[d][i], d < dim
  void (*radii)(const double* const* coords, const double* center, int dim,
                double* out, std::size_t k);
};

FamilyParams make_family_params(int n, double c_n, double beta_n, double lambda);

/// The scalar reference lane (always available; ground truth for tests).
const Ops& scalar_ops();

/// The lane selected at startup: best available SIMD lane unless overridden
/// by set_backend() or the LIOUVILLE_BACKEND environment variable
/// ("scalar", "simd128", "avx2"). Selection happens once; reports are
/// byte-stable across runs on the same machine.
const Ops& active_ops();

bool set_backend(std::string_view name);
std::string_view backend_name();
std::vector<std::string_view> available_backends();

/// Deterministic pairwise reduction; the summation tree depends only on the
/// element count, never on the lane or execution order.
double pairwise_sum(std::span<const double> v);
/// Pairwise reduction of elementwise products w[i]*f[i] (quadrature dot).
double pairwise_dot(std::span<const double> w, std::span<const double> f);

}  // namespace liouville::kernels
