#include "liouville/level_sets.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace liouville {

namespace {

void require_radial(const SolutionField& sol, const char* who) {
  if (!sol.is_radial())
    throw unsupported_error(std::string(who) + ": level-set machinery needs a radial field");
}

}  // namespace

double superlevel_radius(const SolutionField& sol, double t) {
  require_radial(sol, "superlevel_radius");
  return sol.superlevel_radius_radial(t);
}

double superlevel_mass(const SolutionField& sol, double t) {
  require_radial(sol, "superlevel_mass");
  return sol.mass_in_ball_radial(sol.superlevel_radius_radial(t));
}

double perimeter_gradient_integral(const SolutionField& sol, double t) {
  require_radial(sol, "perimeter_gradient_integral");
  const Dimension& dim = sol.dim();
  const double R = sol.superlevel_radius_radial(t);
  const double q = std::abs(sol.radial_derivative(R));
  return dim.sigma * std::pow(R, dim.n - 1.0) * powi(q, dim.n - 1);
}

CoareaPair coarea_derivative(const SolutionField& sol, double t, double h) {
  require_radial(sol, "coarea_derivative");
  if (!(h > 0.0)) throw std::domain_error("coarea_derivative: h must be > 0");
  if (!(t + h < sol.peak_value()))
    throw std::domain_error("coarea_derivative: t + h reaches the peak value");
  const Dimension& dim = sol.dim();
  const double R = sol.superlevel_radius_radial(t);
  const double q = std::abs(sol.radial_derivative(R));
  CoareaPair out;
  out.analytic = dim.sigma * std::pow(R, dim.n - 1.0) / q;
  const double r_lo = sol.superlevel_radius_radial(t - h);
  const double r_hi = sol.superlevel_radius_radial(t + h);
  const double vol_lo = dim.omega_n * powi(r_lo, dim.n);
  const double vol_hi = dim.omega_n * powi(r_hi, dim.n);
  out.finite_diff = (vol_lo - vol_hi) / (2.0 * h);
  return out;
}

MassOdeResult mass_ode_check(const SolutionField& sol, double t) {
  require_radial(sol, "mass_ode_check");
  const Dimension& dim = sol.dim();
  const double n = dim.n;
  const double R = sol.superlevel_radius_radial(t);
  const double q = std::abs(sol.radial_derivative(R));
  const double coarea = dim.sigma * std::pow(R, n - 1.0) / q;
  const double M = sol.mass_in_ball_radial(R);
  MassOdeResult out;
  out.lhs = -std::exp(t) * coarea;
  out.rhs = -((n - 1.0) / n) * std::pow(dim.mass_quantum, 1.0 / (n - 1.0)) *
                std::pow(M, (n - 2.0) / (n - 1.0)) +
            ((n - 1.0) / n) * M;
  out.residual = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.lhs));
  return out;
}

ChainResult isoperimetric_chain(const SolutionField& sol, double t, double h) {
  require_radial(sol, "isoperimetric_chain");
  if (!(h > 0.0)) throw std::domain_error("isoperimetric_chain: h must be > 0");
  if (!(t + h < sol.peak_value()))
    throw std::domain_error("isoperimetric_chain: t + h reaches the peak value");
  const Dimension& dim = sol.dim();
  const double n = dim.n;
  const double expo = n / (n - 1.0);
  ChainResult out;
  const double m_lo = superlevel_mass(sol, t - h);
  const double m_hi = superlevel_mass(sol, t + h);
  out.d1 = (std::pow(m_lo, expo) - std::pow(m_hi, expo)) / (2.0 * h);
  const double R = sol.superlevel_radius_radial(t);
  const double q = std::abs(sol.radial_derivative(R));
  const double coarea = dim.sigma * std::pow(R, n - 1.0) / q;
  const double pg = dim.sigma * std::pow(R, n - 1.0) * powi(q, dim.n - 1);
  out.d2 = expo * std::pow(pg, 1.0 / (n - 1.0)) * std::exp(t) * coarea;
  const double perimeter = dim.sigma * std::pow(R, n - 1.0);
  out.d3 = expo * std::exp(t) * std::pow(perimeter, expo);
  out.d4 = std::pow(dim.mass_quantum, 1.0 / (n - 1.0)) * std::exp(t) * dim.omega_n *
           powi(R, dim.n);
  return out;
}

double closed_form_superlevel_mass(const Dimension& dim, double t, double t0) {
  return dim.mass_quantum * powi(1.0 - std::exp((t - t0) / dim.n), dim.n - 1);
}

std::vector<double> level_grid(double t0, int count, double depth, double margin) {
  if (count < 2) throw std::domain_error("level_grid: need at least 2 levels");
  if (!(depth > margin && margin > 0.0))
    throw std::domain_error("level_grid: need depth > margin > 0");
  std::vector<double> levels(count);
  const double ratio = std::log(depth / margin);
  for (int j = 0; j < count; ++j) {
    // geometric in t0 - t, deepest first so levels come out increasing
    const double frac = static_cast<double>(j) / (count - 1);
    levels[j] = t0 - depth * std::exp(-ratio * frac);
  }
  return levels;
}

LevelSetSample level_sample(const SolutionField& sol, double t, double h_chain) {
  LevelSetSample s;
  s.t = t;
  s.radius = superlevel_radius(sol, t);
  s.volume = sol.dim().omega_n * powi(s.radius, sol.dim().n);
  s.mass = sol.mass_in_ball_radial(s.radius);
  s.perimeter_grad = perimeter_gradient_integral(sol, t);
  s.coarea_deriv = coarea_derivative(sol, t, h_chain).analytic;
  const ChainResult ch = isoperimetric_chain(sol, t, h_chain);
  s.chain[0] = ch.d1;
  s.chain[1] = ch.d2;
  s.chain[2] = ch.d3;
  s.chain[3] = ch.d4;
  return s;
}

std::string level_set_csv(const SolutionField& sol, std::span<const double> levels) {
  std::string out = "t,R,volume,mass,perimeter_grad,coarea,D1,D2,D3,D4\n";
  char line[512];
  for (double t : levels) {
    const double h = 1e-5 * (1.0 + std::abs(t));
    const LevelSetSample s = level_sample(sol, t, h);
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.radius,
                  s.volume, s.mass, s.perimeter_grad, s.coarea_deriv, s.chain[0], s.chain[1],
                  s.chain[2], s.chain[3]);
    out += line;
  }
  return out;
}

}  // namespace liouville
