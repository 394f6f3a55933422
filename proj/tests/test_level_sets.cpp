#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liouville/exact_solution.hpp"
#include "liouville/level_sets.hpp"
#include "liouville/shooting.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("superlevel_mass: spot value 4 pi at t = log 2, against quadrature") {
  const Dimension d = dimension_constants(2);
  const ExactSolution sol = family_member(d, 1.0, {0, 0});
  const double t = std::log(2.0);
  CHECK(superlevel_radius(sol, t) == doctest::Approx(1.0).epsilon(1e-14));
  const double M = superlevel_mass(sol, t);
  CHECK(M == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  // independent oracle: adaptive Simpson of 2 pi r e^U over [0, R(t)]
  const double oracle = oracles::adaptive_simpson(
      [](double r) {
        const double q = 1.0 + r * r;
        return 2.0 * kPi * r * 8.0 / (q * q);
      },
      0.0, 1.0, 1e-13);
  CHECK(M == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("superlevel_mass: closed form across the level grid, n = 2..4") {
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    for (double lambda : {0.5, 1.0, 2.0}) {
      const ExactSolution sol = family_member(d, lambda, zeros(n));
      const double t0 = sol.peak_value();
      for (double t : level_grid(t0, 50)) {
        const double M = superlevel_mass(sol, t);
        const double closed = closed_form_superlevel_mass(d, t, t0);
        CHECK(std::abs(M - closed) <= 1e-8 * (1.0 + closed));
      }
    }
  }
}

TEST_CASE("superlevel_mass: limits at the peak and in the deep range") {
  const Dimension d = dimension_constants(2);
  const ExactSolution sol = family_member(d, 1.0, {0, 0});
  const double t0 = sol.peak_value();
  CHECK(superlevel_mass(sol, t0 - 1e-9) <= 1e-7);
  // t -> -inf exhausts the total mass 8 pi
  CHECK(superlevel_mass(sol, t0 - 40.0) ==
        doctest::Approx(8.0 * kPi).epsilon(1e-8));
  CHECK_THROWS_AS(superlevel_mass(sol, t0), std::domain_error);
}

TEST_CASE("perimeter_gradient_integral: equals the superlevel mass (level-set flux)") {
  const Dimension d2 = dimension_constants(2);
  const ExactSolution s2 = family_member(d2, 1.0, {0, 0});
  // |grad U| = 2 on the unit circle, perimeter 2 pi
  CHECK(perimeter_gradient_integral(s2, std::log(2.0)) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    const ExactSolution sol = family_member(d, 1.0, zeros(n));
    const double t0 = sol.peak_value();
    for (double t : level_grid(t0, 50)) {
      const double pg = perimeter_gradient_integral(sol, t);
      const double M = superlevel_mass(sol, t);
      CHECK(std::abs(pg - M) <= 1e-8 * (1.0 + M));
      // the n w_n |grad U|^{n-1} R^{n-1} recombination uses sigma = n w_n
      const double R = superlevel_radius(sol, t);
      const double q = std::abs(sol.radial_derivative(R));
      CHECK(pg == doctest::Approx(n * d.omega_n * powi(q, n - 1) * std::pow(R, n - 1.0))
                      .epsilon(1e-13));
    }
  }
}

TEST_CASE("coarea_derivative: analytic pi at t = log 2 and h^2 convergence") {
  const Dimension d = dimension_constants(2);
  const ExactSolution sol = family_member(d, 1.0, {0, 0});
  const double t = std::log(2.0);
  const CoareaPair c1 = coarea_derivative(sol, t, 1e-4);
  CHECK(c1.analytic == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(std::abs(c1.finite_diff - kPi) <= 1e-7);
  // halving h divides the finite-difference error by about 4
  const CoareaPair c2 = coarea_derivative(sol, t, 1e-3);
  const CoareaPair c3 = coarea_derivative(sol, t, 5e-4);
  const double e2 = std::abs(c2.finite_diff - c2.analytic);
  const double e3 = std::abs(c3.finite_diff - c3.analytic);
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.1));
  CHECK_THROWS_AS(coarea_derivative(sol, sol.peak_value() - 1e-9, 1e-4), std::domain_error);
}

TEST_CASE("mass_ode_check: frozen t = log 2 values and grid residuals") {
  const Dimension d = dimension_constants(2);
  const ExactSolution sol = family_member(d, 1.0, {0, 0});
  const MassOdeResult r = mass_ode_check(sol, std::log(2.0));
  // M' = -e^t coarea = -2 pi; rhs = -(1/2) 8 pi + (1/2) 4 pi = -2 pi
  CHECK(r.lhs == doctest::Approx(-2.0 * kPi).epsilon(1e-13));
  CHECK(r.rhs == doctest::Approx(-2.0 * kPi).epsilon(1e-13));
  CHECK(r.residual <= 1e-8);
  for (int n : {2, 3, 4}) {
    const Dimension dn = dimension_constants(n);
    const ExactSolution soln = family_member(dn, 1.0, zeros(n));
    for (double t : level_grid(soln.peak_value(), 50))
      CHECK(mass_ode_check(soln, t).residual <= 1e-9);
  }
  // boundary of the range: both sides vanish as t -> t0
  const MassOdeResult near_peak = mass_ode_check(sol, sol.peak_value() - 1e-6);
  CHECK(std::abs(near_peak.lhs) <= 1e-2);
  CHECK(near_peak.residual <= 1e-8);
}

TEST_CASE("isoperimetric_chain: all four terms equal 16 pi^2 at t = log 2") {
  const Dimension d = dimension_constants(2);
  const ExactSolution sol = family_member(d, 1.0, {0, 0});
  const ChainResult ch = isoperimetric_chain(sol, std::log(2.0), 1e-5);
  const double expect = 16.0 * kPi * kPi;
  CHECK(ch.d1 == doctest::Approx(expect).epsilon(1e-7));  // central differences
  CHECK(ch.d2 == doctest::Approx(expect).epsilon(1e-13));
  CHECK(ch.d3 == doctest::Approx(expect).epsilon(1e-13));
  CHECK(ch.d4 == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("isoperimetric_chain: D1 = D2 >= D3 >= D4 with equality on the family") {
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    const ExactSolution sol = family_member(d, 1.3, zeros(n));
    for (double t : level_grid(sol.peak_value(), 50)) {
      const double h = 1e-5 * (1.0 + std::abs(t));
      const ChainResult ch = isoperimetric_chain(sol, t, h);
      const double top = std::max({std::abs(ch.d1), std::abs(ch.d2), std::abs(ch.d3),
                                   std::abs(ch.d4)});
      const double spread = std::max({ch.d1, ch.d2, ch.d3, ch.d4}) -
                            std::min({ch.d1, ch.d2, ch.d3, ch.d4});
      CHECK(spread <= 1e-6 * (1.0 + top));
      const double slack = 1e-9 * (1.0 + top);
      CHECK(ch.d2 >= ch.d3 - slack);
      CHECK(ch.d3 >= ch.d4 - slack);
      // ball level sets saturate the isoperimetric step exactly
      CHECK(std::abs(ch.d3 - ch.d4) <= 1e-12 * (1.0 + top));
    }
  }
}

TEST_CASE("level_grid: geometric spacing of t0 - t") {
  const std::vector<double> g = level_grid(1.5, 50);
  CHECK(g.size() == 50);
  CHECK(g.front() == doctest::Approx(1.5 - 20.0).epsilon(1e-14));
  CHECK(g.back() == doctest::Approx(1.5 - 0.1).epsilon(1e-14));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  // geometric in the gap: ratios of consecutive gaps are constant
  const double q0 = (1.5 - g[1]) / (1.5 - g[0]);
  for (std::size_t i = 2; i < g.size(); ++i)
    CHECK((1.5 - g[i]) / (1.5 - g[i - 1]) == doctest::Approx(q0).epsilon(1e-10));
  CHECK_THROWS_AS(level_grid(0.0, 1), std::domain_error);
}

TEST_CASE("level machinery on the shot radial profile, lambda inferred from alpha") {
  const Dimension d = dimension_constants(2);
  const RadialSolution shot = integrate_radial(std::log(8.0), 1e3, d, 1e-10, 1e-12);
  const double t0 = shot.peak_value();
  for (double t : level_grid(t0, 25, 20.0, 0.1)) {
    const double M = superlevel_mass(shot, t);
    const double closed = closed_form_superlevel_mass(d, t, t0);
    CHECK(std::abs(M - closed) <= 1e-8 * (1.0 + closed));
    const double pg = perimeter_gradient_integral(shot, t);
    CHECK(std::abs(pg - M) <= 1e-6 * (1.0 + M));
  }
}

TEST_CASE("level_set_csv: schema and row count") {
  const Dimension d = dimension_constants(2);
  const ExactSolution sol = family_member(d, 1.0, {0, 0});
  const std::vector<double> levels = level_grid(sol.peak_value(), 10);
  const std::string csv = level_set_csv(sol, levels);
  CHECK(csv.rfind("t,R,volume,mass,perimeter_grad,coarea,D1,D2,D3,D4\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}
