#pragma once

#include <span>
#include <vector>

#include "liouville/field.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

/// Nonlinearity primitive in the Pohozaev identity: F(t) = int_0^t e^s ds =
/// e^t - 1 (the literal choice), with the bare e^t variant exposed because
/// the identity's residual must not change under the shift (the constant
/// integrates to n*c*|B_R| on both sides).
enum class PohozaevWeight { exp_minus_one, exp_t };

struct PohozaevReport {
  Vec y;
  double R = 0.0;
  double lhs = 0.0;                   // n * int_{B_R(y)} F(U)
  double boundary_F_term = 0.0;       // int F(U) <x-y, nu>
  double boundary_cross_term = 0.0;   // int |grad U|^{n-2} <x-y, grad U> dU/dnu
  double boundary_energy_term = 0.0;  // -int |grad U|^n / n <x-y, nu>
  double residual = 0.0;              // lhs - (sum of boundary terms)
  double rel_residual = 0.0;          // |residual| / (1 + |lhs|)
};

/// Residual of the domain-ball Pohozaev identity on B_R(y). Radial solutions
/// centered at y work in every supported dimension (the boundary integrands
/// are constant on the sphere); any other geometry goes through the surface
/// rules and needs n in {2, 3}.
PohozaevReport pohozaev_residual(const SolutionField& sol, std::span<const double> y, double R,
                                 const QuadratureSpec& spec,
                                 PohozaevWeight weight = PohozaevWeight::exp_minus_one);

struct MassFluxResult {
  double interior = 0.0;  // int_{B_R(y)} e^U
  double flux = 0.0;      // -int_{dB_R(y)} |grad U|^{n-2} dU/dnu
  double rel_gap = 0.0;   // |interior - flux| / (1 + interior)
};

/// Divergence-form balance of the equation on B_R(y); same geometry rules
/// as pohozaev_residual.
MassFluxResult mass_flux_identity(const SolutionField& sol, std::span<const double> y, double R,
                                  const QuadratureSpec& spec);

/// Unique positive root of  n*g - omega_n (n-1) (g/(n omega_n))^{n/(n-1)},
/// by safeguarded Newton bracketed in [omega_n, 10^n c_n omega_n]. Equals
/// the mass quantum c_n omega_n.
double limit_mass_root(const Dimension& dim);

struct AsymptoticsReport {
  std::vector<double> radii;
  std::vector<double> slope_samples;      // mean over directions of -<x, grad U> at |x| = r
  double fitted_beta = 0.0;               // log-log fit over the top decade of radii
  std::vector<double> remainder_samples;  // sup over directions of
                                          // |x| |grad(Uhat - beta log|x|)| at |x| = 1/r
  std::vector<double> gamma_from_flux;    // mass of e^U in B_r
};

/// Far-field diagnostics: radial slopes, fitted log coefficient, and the
/// Kelvin-side remainder ladder. Throws std::domain_error for fewer than 4
/// radii (the fit is undefined).
AsymptoticsReport asymptotics_report(const SolutionField& sol, std::span<const double> radii,
                                     int directions, const QuadratureSpec& spec);

/// int_{B_R \ B_1} |grad U|^q / |x|^{2(n-q)} dx for a radial solution
/// centered at the origin. Finite limit for q < n; grows like
/// sigma * beta^n * log R at q = n. Throws std::domain_error unless
/// 1 <= q <= n and R > 1.
double weighted_sobolev_integral(const SolutionField& sol, double q, double R,
                                 const QuadratureSpec& spec);

}  // namespace liouville
