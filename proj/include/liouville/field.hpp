#pragma once

#include <span>

#include "liouville/constants.hpp"
#include "liouville/errors.hpp"
#include "liouville/vec.hpp"

namespace liouville {

/// A C^1 scalar field on R^n: the object every verifier consumes. The two
/// implementations are the closed-form family (ExactSolution) and the shot
/// radial profile (RadialSolution).
///
/// Radial fields additionally expose their profile through the *_radial
/// hooks; callers must check is_radial() first. The batch hooks exist so
/// quadrature inner loops can run through the kernel lanes; the defaults
/// simply loop over the scalar entry points.
class SolutionField {
public:
  virtual ~SolutionField() = default;

  virtual double value(std::span<const double> x) const = 0;
  virtual Vec gradient(std::span<const double> x) const = 0;
  virtual const Dimension& dim() const = 0;
  virtual bool is_radial() const = 0;

  virtual std::span<const double> center() const {
    throw unsupported_error("center(): field is not radial");
  }

  // ---- radial profile -----------------------------------------------------

  virtual double value_radial(double) const {
    throw unsupported_error("value_radial(): field is not radial");
  }
  /// U'(r); <= 0 for the decreasing profiles this library constructs.
  virtual double radial_derivative(double) const {
    throw unsupported_error("radial_derivative(): field is not radial");
  }
  /// Mass of e^U inside B_R(center).
  virtual double mass_in_ball_radial(double) const {
    throw unsupported_error("mass_in_ball_radial(): field is not radial");
  }
  /// t0 = sup U (attained at the center for radial fields).
  virtual double peak_value() const {
    throw unsupported_error("peak_value(): field is not radial");
  }
  /// Largest radius at which the profile is defined (inf for closed forms).
  virtual double max_radius() const {
    throw unsupported_error("max_radius(): field is not radial");
  }
  /// R(t): radius of the superlevel ball {U > t}; t must be < peak_value().
  virtual double superlevel_radius_radial(double) const {
    throw unsupported_error("superlevel_radius_radial(): field is not radial");
  }

  // ---- batch hooks ----------------------------------------------------------

  virtual void radial_values(std::span<const double> r, std::span<double> u) const {
    for (std::size_t i = 0; i < r.size(); ++i) u[i] = value_radial(r[i]);
  }
  virtual void radial_exp_values(std::span<const double> r, std::span<double> eu) const {
    for (std::size_t i = 0; i < r.size(); ++i) eu[i] = std::exp(value_radial(r[i]));
  }
  virtual void radial_grad_mags(std::span<const double> r, std::span<double> g) const {
    for (std::size_t i = 0; i < r.size(); ++i) g[i] = std::abs(radial_derivative(r[i]));
  }
};

}  // namespace liouville
