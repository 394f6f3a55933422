#include "liouville/exact_solution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace liouville {

ExactSolution::ExactSolution(const Dimension& dim, double lambda, Vec p)
    : dim_(dim), lambda_(lambda), p_(std::move(p)) {
  if (!(lambda > 0.0))
    throw std::domain_error("ExactSolution: lambda must be > 0, got " + std::to_string(lambda));
  if (p_.size() != static_cast<std::size_t>(dim.n))
    throw std::domain_error("ExactSolution: center has length " + std::to_string(p_.size()) +
                            ", dimension is " + std::to_string(dim.n));
  params_ = kernels::make_family_params(dim.n, dim.c_n, dim.beta_n, lambda);
}

double ExactSolution::value(std::span<const double> x) const { return value_radial(dist(x, p_)); }

Vec ExactSolution::gradient(std::span<const double> x) const {
  const double r = dist(x, p_);
  if (r == 0.0) return zeros(p_.size());
  // grad U = -(slope/r^2) (x - p), slope = r|U'|
  const double coef = -slope_radial(r) / (r * r);
  Vec g(p_.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = coef * (x[i] - p_[i]);
  return g;
}

double ExactSolution::value_radial(double r) const {
  return params_.log_peak - dim_.n * std::log1p(params_.a * std::pow(r, params_.m));
}

double ExactSolution::slope_radial(double r) const {
  const double t = params_.a * std::pow(r, params_.m);
  return params_.beta * t / (1.0 + t);
}

double ExactSolution::radial_derivative(double r) const {
  return r == 0.0 ? 0.0 : -slope_radial(r) / r;
}

double ExactSolution::flux_radial(double r) const { return -powi(slope_radial(r), dim_.n - 1); }

double ExactSolution::exp_value_radial(double r) const {
  return params_.peak / powi(1.0 + params_.a * std::pow(r, params_.m), dim_.n);
}

double ExactSolution::mass_in_ball_radial(double R) const { return -dim_.sigma * flux_radial(R); }

double ExactSolution::max_radius() const { return std::numeric_limits<double>::infinity(); }

double ExactSolution::superlevel_radius_radial(double t) const {
  // inversion of e^t = c_n lambda^n / (1 + lambda^m R^m)^n
  if (!(t < params_.log_peak))
    throw std::domain_error("superlevel_radius: level t >= peak value, superlevel set is empty");
  const double n = dim_.n;
  const double base = std::exp((params_.log_peak - t) / n) - 1.0;  // lambda^m R^m
  return std::pow(base, 1.0 / params_.m) / lambda_;
}

void ExactSolution::radial_values(std::span<const double> r, std::span<double> u) const {
  kernels::active_ops().family_u(params_, r.data(), u.data(), r.size());
}

void ExactSolution::radial_exp_values(std::span<const double> r, std::span<double> eu) const {
  kernels::active_ops().family_exp_u(params_, r.data(), eu.data(), r.size());
}

void ExactSolution::radial_grad_mags(std::span<const double> r, std::span<double> g) const {
  kernels::active_ops().family_grad_mag(params_, r.data(), g.data(), r.size());
}

double eval_u(const ExactSolution& sol, std::span<const double> x) { return sol.value(x); }

Vec eval_grad(const ExactSolution& sol, std::span<const double> x) { return sol.gradient(x); }

double exact_mass(const ExactSolution& sol) { return sol.dim().mass_quantum; }

ExactSolution family_member(const Dimension& dim, double lambda, Vec p) {
  return ExactSolution(dim, lambda, std::move(p));
}

KelvinValue kelvin_eval(const SolutionField& sol, std::span<const double> x) {
  const double rho2 = dot(x, x);
  if (rho2 == 0.0) throw std::domain_error("kelvin_eval: x = 0 maps to infinity");
  const Vec y = scaled(x, 1.0 / rho2);
  const Vec g = sol.gradient(y);
  return KelvinValue{sol.value(y), norm(g) / rho2};
}

Vec kelvin_gradient(const SolutionField& sol, std::span<const double> x) {
  const double rho2 = dot(x, x);
  if (rho2 == 0.0) throw std::domain_error("kelvin_gradient: x = 0 maps to infinity");
  const Vec y = scaled(x, 1.0 / rho2);
  const Vec g = sol.gradient(y);
  const double xg = dot(x, g);
  Vec out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (g[i] - 2.0 * xg * x[i] / rho2) / rho2;
  return out;
}

}  // namespace liouville
