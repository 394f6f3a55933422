#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liouville/field.hpp"

namespace liouville {

/// Leading-order start values for the radial problem at a small radius
/// r0 > 0, from the center expansion of the flux integral:
///   u0 = alpha - ((n-1)/n) (e^alpha/n)^{1/(n-1)} r0^{n/(n-1)}
///   w0 = -e^alpha r0^n / n
/// The neglected u-correction is O(r0^{2n/(n-1)}) relative.
/// Throws std::domain_error for r0 <= 0.
std::pair<double, double> series_start(double alpha, double r0, const Dimension& dim);

/// Numerically integrated radial solution of -Delta_n U = e^U with center
/// value U(0) = alpha and regular center (w(0) = 0). Stored as grid nodes
/// (r_i, U_i, U'_i, w_i) with cubic Hermite dense output between nodes
/// (abscissa log r, where the system is smooth down to the center) and the
/// two-term center series below the start radius.
class RadialSolution final : public SolutionField {
public:
  double value(std::span<const double> x) const override;
  Vec gradient(std::span<const double> x) const override;
  const Dimension& dim() const override { return dim_; }
  bool is_radial() const override { return true; }
  std::span<const double> center() const override { return center_; }

  double value_radial(double r) const override;
  double radial_derivative(double r) const override;
  double mass_in_ball_radial(double R) const override;
  double peak_value() const override { return alpha_; }
  double max_radius() const override { return r_max_; }
  double superlevel_radius_radial(double t) const override;

  double alpha() const { return alpha_; }
  double start_radius() const { return r0_; }
  /// w(r) = r^{n-1}|U'|^{n-2}U'(r), interpolated in log form.
  double flux_at(double r) const;

  std::span<const double> grid() const { return r_; }
  std::span<const double> u_values() const { return u_; }
  std::span<const double> du_values() const { return du_; }
  std::span<const double> du_dlogr_values() const { return dus_; }    // r U'(r) per node
  std::span<const double> d2u_dlogr2_values() const { return d2us_; }  // d^2 u / d(log r)^2
  std::span<const double> flux_values() const { return w_; }

private:
  friend RadialSolution integrate_radial(double, double, const Dimension&, double, double);

  std::size_t locate(double s) const;  // interval index in s_
  double series_u(double r) const;
  double series_du(double r) const;

  Dimension dim_;
  double alpha_ = 0.0;
  double series_coeff_ = 0.0;   // A in u ~ alpha - A r^m + C r^{2m} near the center
  double series_coeff2_ = 0.0;  // C
  double r0_ = 0.0, r_max_ = 0.0;
  Vec center_;
  // node data; s = log r is the interpolation abscissa
  std::vector<double> r_, s_, u_, dus_, d2us_, du_, w_, z_, dzs_, logp_, dlogp_;
};

/// Shoots the radial problem from the center value alpha out to r_max with
/// an adaptive embedded Runge-Kutta 4(5) pair (PI step control) applied to
/// the smooth log-radius form
///   du/ds = -|w|^{1/(n-1)},   d(log|w|)/ds = r^n e^u / |w|,   s = log r.
/// The start radius shrinks with rtol so the truncated center series stays
/// below the step-control tolerances. Tolerances must lie in (0, 1e-2).
/// Throws integration_error (carrying the last good radius) on step
/// underflow or non-finite state.
RadialSolution integrate_radial(double alpha, double r_max, const Dimension& dim,
                                double rtol = 1e-10, double atol = 1e-12);

/// Mass of e^U in B_R(0) through the divergence identity: -sigma * w(R).
/// Throws std::domain_error unless 0 < R <= r_max.
double mass_in_ball(const RadialSolution& sol, double R);

struct TotalMass {
  double mass = 0.0;           // mass_in_ball(r_max) + tail
  double tail_estimate = 0.0;  // sigma e^C r_max^{n-beta} / (beta-n)
  double fitted_beta = 0.0;    // log-log slope over the last grid decade
  double fitted_log_coeff = 0.0;
};

/// Total mass with the analytic tail from the fitted asymptote
/// U ~ -beta log r + C on [r_max/10, r_max]. Throws tail_divergence_error
/// if the fitted slope does not exceed n.
TotalMass total_mass(const RadialSolution& sol);

/// Conservation check: max over grid nodes of
///   |w(r_i) + integral_0^{r_i} s^{n-1} e^U ds| / |w(r_i)|,
/// with the integral done by the two-point Hermite (corrected trapezoid)
/// rule on the node data plus the center series piece below r0.
double flux_consistency_max_rel(const RadialSolution& sol);

/// Profile dump rows "r,U,dU_dr,flux,mass_in_ball" at the given radii.
std::string profile_csv(const SolutionField& sol, std::span<const double> radii);

}  // namespace liouville
