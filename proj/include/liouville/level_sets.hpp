#pragma once

#include <span>
#include <string>
#include <vector>

#include "liouville/field.hpp"

namespace liouville {

/// One superlevel set {U > t} of a radial decreasing solution: a ball of
/// radius R(t) about the center, with its volume, mass, boundary gradient
/// integral, coarea derivative and the four-term isoperimetric chain.
struct LevelSetSample {
  double t = 0.0;
  double radius = 0.0;          // R(t)
  double volume = 0.0;          // |{U > t}| = omega_n R^n
  double mass = 0.0;            // M(t) = int_{U > t} e^U
  double perimeter_grad = 0.0;  // int_{U = t} |grad U|^{n-1}
  double coarea_deriv = 0.0;    // -d|{U > t}|/dt
  double chain[4] = {0, 0, 0, 0};  // D1..D4, see isoperimetric_chain
};

/// R(t): closed-form inversion for the exact family, monotone bisection of
/// the interpolant for shot profiles. Throws std::domain_error at or above
/// the peak value (empty superlevel set).
double superlevel_radius(const SolutionField& sol, double t);

/// M(t) = mass of e^U over the superlevel ball.
double superlevel_mass(const SolutionField& sol, double t);

/// int over the level surface of |grad U|^{n-1}; equals M(t) for solutions
/// of the equation (the level-set flux identity).
double perimeter_gradient_integral(const SolutionField& sol, double t);

struct CoareaPair {
  double analytic = 0.0;     // sigma R^{n-1} / |U'(R)|
  double finite_diff = 0.0;  // (|Omega_{t-h}| - |Omega_{t+h}|) / (2h)
};

/// Both routes to -d|Omega_t|/dt; they differ by O(h^2).
/// Requires t + h below the peak value.
CoareaPair coarea_derivative(const SolutionField& sol, double t, double h);

struct MassOdeResult {
  double lhs = 0.0;       // M'(t) = -e^t * coarea
  double rhs = 0.0;       // -((n-1)/n)(c_n w_n)^{1/(n-1)} M^{(n-2)/(n-1)} + ((n-1)/n) M
  double residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
};

/// The first-order mass equation satisfied along the level sets.
MassOdeResult mass_ode_check(const SolutionField& sol, double t);

struct ChainResult {
  double d1 = 0.0;  // -d/dt M^{n/(n-1)}, central differences
  double d2 = 0.0;  // (n/(n-1)) (perimeter_grad)^{1/(n-1)} e^t coarea
  double d3 = 0.0;  // (n/(n-1)) e^t |dOmega_t|^{n/(n-1)}
  double d4 = 0.0;  // (c_n w_n)^{1/(n-1)} e^t |Omega_t|
};

/// The isoperimetric chain D1 = D2 >= D3 >= D4; all four coincide exactly on
/// the classified family.
ChainResult isoperimetric_chain(const SolutionField& sol, double t, double h);

/// Closed-form M(t) = c_n w_n [1 - e^{(t-t0)/n}]^{n-1} of the family.
double closed_form_superlevel_mass(const Dimension& dim, double t, double t0);

/// Geometric level grid in t0 - t over [t0 - depth, t0 - margin],
/// increasing in t.
std::vector<double> level_grid(double t0, int count = 50, double depth = 20.0,
                               double margin = 0.1);

/// Full sample at one level (chain uses step h_chain for D1).
LevelSetSample level_sample(const SolutionField& sol, double t, double h_chain);

/// CSV rows "t,R,volume,mass,perimeter_grad,coarea,D1,D2,D3,D4".
std::string level_set_csv(const SolutionField& sol, std::span<const double> levels);

}  // namespace liouville
