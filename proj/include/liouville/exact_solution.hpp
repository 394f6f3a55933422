#pragma once

#include <span>

#include "liouville/field.hpp"
#include "liouville/kernels.hpp"
#include "liouville/vec.hpp"

namespace liouville {

/// The explicit solution family
///   U_{lambda,p}(x) = log( c_n lambda^n / (1 + lambda^m |x-p|^m)^n ),
/// m = n/(n-1). Radially decreasing about p with peak value log(c_n lambda^n)
/// and total mass c_n * omega_n independently of lambda and p.
class ExactSolution final : public SolutionField {
public:
  /// Throws std::domain_error unless lambda > 0 and p has length dim.n.
  ExactSolution(const Dimension& dim, double lambda, Vec p);

  double value(std::span<const double> x) const override;
  Vec gradient(std::span<const double> x) const override;
  const Dimension& dim() const override { return dim_; }
  bool is_radial() const override { return true; }
  std::span<const double> center() const override { return p_; }

  double value_radial(double r) const override;
  double radial_derivative(double r) const override;
  double mass_in_ball_radial(double R) const override;
  double peak_value() const override { return params_.log_peak; }
  double max_radius() const override;
  double superlevel_radius_radial(double t) const override;

  void radial_values(std::span<const double> r, std::span<double> u) const override;
  void radial_exp_values(std::span<const double> r, std::span<double> eu) const override;
  void radial_grad_mags(std::span<const double> r, std::span<double> g) const override;

  // closed-form profile pieces used throughout the verifiers
  double slope_radial(double r) const;      // r|U'|(r)
  double flux_radial(double r) const;       // w(r) = -slope^{n-1}
  double exp_value_radial(double r) const;  // e^{U(r)}

  double lambda() const { return lambda_; }
  const kernels::FamilyParams& params() const { return params_; }

private:
  Dimension dim_;
  double lambda_;
  Vec p_;
  kernels::FamilyParams params_;
};

// ---- operations on the family ----------------------------------------------

/// U_{lambda,p}(x).
double eval_u(const ExactSolution& sol, std::span<const double> x);

/// grad U_{lambda,p}(x); the zero vector at x = p (continuous extension).
Vec eval_grad(const ExactSolution& sol, std::span<const double> x);

/// Total mass of e^U: always dim.mass_quantum, independent of lambda and p.
double exact_mass(const ExactSolution& sol);

/// Builds U_{lambda,p}; throws std::domain_error for lambda <= 0.
ExactSolution family_member(const Dimension& dim, double lambda, Vec p);

struct KelvinValue {
  double value;           // U(x/|x|^2)
  double grad_magnitude;  // |grad Uhat|(x) = |x|^{-2} |grad U|(x/|x|^2)
};

/// Kelvin transform Uhat(x) = U(x/|x|^2) and its gradient magnitude at x.
/// Throws std::domain_error at x = 0 (the image point is at infinity).
KelvinValue kelvin_eval(const SolutionField& sol, std::span<const double> x);

/// Full gradient of the Kelvin transform, via the inversion Jacobian
/// (I - 2 xhat xhat^T)/|x|^2 applied to grad U at x/|x|^2.
Vec kelvin_gradient(const SolutionField& sol, std::span<const double> x);

}  // namespace liouville
