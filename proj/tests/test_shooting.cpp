#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liouville/exact_solution.hpp"
#include "liouville/shooting.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

constexpr double kPi = std::numbers::pi;

double family_sup_error(const RadialSolution& sol, const ExactSolution& ref) {
  double sup = 0.0;
  const auto grid = sol.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup = std::max(sup, std::abs(sol.u_values()[i] - ref.value_radial(grid[i])));
    if (i > 0) {
      const double mid = std::sqrt(grid[i - 1] * grid[i]);
      sup = std::max(sup, std::abs(sol.value_radial(mid) - ref.value_radial(mid)));
    }
  }
  return sup;
}

double node_sup_error(const RadialSolution& sol, const ExactSolution& ref) {
  double sup = 0.0;
  const auto grid = sol.grid();
  for (std::size_t i = 0; i < grid.size(); ++i)
    sup = std::max(sup, std::abs(sol.u_values()[i] - ref.value_radial(grid[i])));
  return sup;
}

}  // namespace

TEST_CASE("series_start: frozen leading-order values") {
  const Dimension d2 = dimension_constants(2);
  const auto [u0, w0] = series_start(std::log(8.0), 1e-6, d2);
  CHECK(u0 == doctest::Approx(std::log(8.0) - 2e-12).epsilon(1e-15));
  CHECK(w0 == doctest::Approx(-4e-12).epsilon(1e-12));
  // cross-check against the exact profile U = log 8 - 2 log(1 + r^2)
  const double exact = std::log(8.0) - 2.0 * std::log1p(1e-12);
  CHECK(std::abs(u0 - exact) <= 1e-14 * (1.0 + std::abs(exact)));

  // regular center: r0 -> 0 recovers (alpha, 0)
  const auto [ua, wa] = series_start(1.234, 1e-300, d2);
  CHECK(ua == doctest::Approx(1.234).epsilon(1e-15));
  CHECK(wa == 0.0);

  CHECK_THROWS_AS(series_start(0.0, 0.0, d2), std::domain_error);
  CHECK_THROWS_AS(series_start(0.0, -1e-3, d2), std::domain_error);
}

TEST_CASE("series_start: matches eval_u of the exact family at r0 = 1e-6") {
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    const double alpha = std::log(d.c_n);  // lambda = 1
    const ExactSolution ref = family_member(d, 1.0, zeros(n));
    const auto [u0, w0] = series_start(alpha, 1e-6, d);
    CHECK(std::abs(u0 - ref.value_radial(1e-6)) / std::abs(ref.value_radial(1e-6)) <= 1e-10);
  }
}

TEST_CASE("integrate_radial: n = 2 family member to sup error 1e-8") {
  const Dimension d = dimension_constants(2);
  const RadialSolution sol = integrate_radial(std::log(8.0), 50.0, d, 1e-10, 1e-12);
  const ExactSolution ref = family_member(d, 1.0, {0, 0});
  // grid-node accuracy tracks the step control; dense output adds the
  // cubic Hermite interpolation error on top
  CHECK(node_sup_error(sol, ref) <= 1e-8);
  CHECK(family_sup_error(sol, ref) <= 1e-6);
}

TEST_CASE("integrate_radial: n = 3 family member") {
  const Dimension d = dimension_constants(3);
  const RadialSolution sol = integrate_radial(std::log(60.75), 50.0, d, 1e-10, 1e-12);
  const ExactSolution ref = family_member(d, 1.0, {0, 0, 0});
  CHECK(family_sup_error(sol, ref) <= 1e-6);
}

TEST_CASE("integrate_radial: arbitrary alpha lands on the member with matched scale") {
  const Dimension d = dimension_constants(2);
  const RadialSolution sol = integrate_radial(0.0, 50.0, d, 1e-10, 1e-12);
  const double lambda = std::sqrt(1.0 / 8.0);  // (e^0 / c_2)^{1/2}
  const ExactSolution ref = family_member(d, lambda, {0, 0});
  CHECK(family_sup_error(sol, ref) <= 1e-6);
}

TEST_CASE("integrate_radial: shooting sweep stays within 100 rtol of the family") {
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    const double base = std::log(d.c_n);
    for (double shift : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const double alpha = base + shift;
      const double rtol = 1e-8;
      const RadialSolution sol = integrate_radial(alpha, 50.0, d, rtol, 1e-12);
      const double lambda = std::exp(shift / n);
      const ExactSolution ref = family_member(d, lambda, zeros(n));
      CHECK(family_sup_error(sol, ref) <= 100.0 * rtol);
    }
  }
}

TEST_CASE("integrate_radial: halving rtol at least halves the node error") {
  // the error measure is the worst case over the alpha sweep, which smooths
  // the per-run scatter of the adaptive step controller
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    const double base = std::log(d.c_n);
    double e1 = 0.0, e2 = 0.0;
    for (double shift : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const double alpha = base + shift;
      const ExactSolution ref = family_member(d, std::exp(shift / n), zeros(n));
      e1 = std::max(e1, node_sup_error(integrate_radial(alpha, 50.0, d, 1e-10, 1e-12), ref));
      e2 = std::max(e2, node_sup_error(integrate_radial(alpha, 50.0, d, 5e-11, 1e-12), ref));
    }
    INFO("n=", n, " e1=", e1, " e2=", e2);
    CHECK(e2 * 2.0 <= e1);
  }
}

TEST_CASE("integrate_radial: flux conservation at every node") {
  for (int n : {2, 3, 4}) {
    const Dimension d = dimension_constants(n);
    for (double rtol : {1e-8, 1e-10}) {
      const RadialSolution sol = integrate_radial(std::log(d.c_n), 50.0, d, rtol, 1e-12);
      CHECK(flux_consistency_max_rel(sol) <= 10.0 * rtol);
    }
  }
}

TEST_CASE("integrate_radial: monotone profile and monotone flux") {
  const Dimension d = dimension_constants(3);
  const RadialSolution sol = integrate_radial(2.0, 100.0, d, 1e-10, 1e-12);
  const auto u = sol.u_values();
  const auto w = sol.flux_values();
  for (std::size_t i = 1; i < u.size(); ++i) {
    CHECK(u[i] < u[i - 1]);
    CHECK(w[i] < w[i - 1]);  // -w strictly increasing
  }
  // mass in ball increasing and bounded by the quantum
  double prev = 0.0;
  for (double R : {0.1, 0.5, 1.0, 5.0, 20.0, 99.0}) {
    const double m = mass_in_ball(sol, R);
    CHECK(m > prev);
    CHECK(m < d.mass_quantum);
    prev = m;
  }
}

TEST_CASE("integrate_radial: tolerance validation") {
  const Dimension d = dimension_constants(2);
  CHECK_THROWS_AS(integrate_radial(0.0, -1.0, d, 1e-10, 1e-12), std::domain_error);
  CHECK_THROWS_AS(integrate_radial(0.0, 10.0, d, 0.5, 1e-12), std::domain_error);
  CHECK_THROWS_AS(integrate_radial(0.0, 10.0, d, 1e-10, 0.0), std::domain_error);
}

TEST_CASE("mass_in_ball: closed flux values of the n = 2 member") {
  const Dimension d = dimension_constants(2);
  const RadialSolution sol = integrate_radial(std::log(8.0), 1e3, d, 1e-11, 1e-13);
  // w(1) = r U' = -2, so the ball mass is sigma * 2 = 4 pi
  CHECK(mass_in_ball(sol, 1.0) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
  // R -> 0 drains the ball
  CHECK(mass_in_ball(sol, 1e-5) <= 1e-8);
  // large-R flux against the closed form 8 pi R^2/(1+R^2)
  const double expect = 8.0 * kPi * 1e6 / (1.0 + 1e6);
  CHECK(std::abs(mass_in_ball(sol, 1e3) / expect - 1.0) <= 1e-9);
  CHECK_THROWS_AS(mass_in_ball(sol, 0.0), std::domain_error);
  CHECK_THROWS_AS(mass_in_ball(sol, 2e3), std::domain_error);
}

TEST_CASE("total_mass: quantization at r_max = 1e3 with the analytic tail") {
  {
    const Dimension d = dimension_constants(2);
    const RadialSolution sol = integrate_radial(std::log(8.0), 1e3, d, 1e-10, 1e-12);
    const TotalMass tm = total_mass(sol);
    CHECK(std::abs(tm.mass / (8.0 * kPi) - 1.0) <= 1e-6);
    CHECK(tm.fitted_beta == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(tm.tail_estimate > 0.0);
  }
  {
    const Dimension d = dimension_constants(3);
    const RadialSolution sol = integrate_radial(std::log(60.75), 1e3, d, 1e-10, 1e-12);
    const TotalMass tm = total_mass(sol);
    CHECK(std::abs(tm.mass / (81.0 * kPi) - 1.0) <= 1e-5);
  }
}

TEST_CASE("total_mass: every family member saturates the lower mass bound") {
  for (int n : {2, 3}) {
    const Dimension d = dimension_constants(n);
    for (double lambda : {0.5, 2.0}) {
      const double alpha = std::log(d.c_n) + n * std::log(lambda);
      const RadialSolution sol = integrate_radial(alpha, 1e3, d, 1e-10, 1e-12);
      CHECK(total_mass(sol).mass >= d.mass_quantum * (1.0 - 1e-5));
    }
  }
}

TEST_CASE("total_mass: short range triggers the tail-divergence error") {
  const Dimension d = dimension_constants(2);
  // at r_max = 0.5 the fitted slope is still below n = 2
  const RadialSolution sol = integrate_radial(std::log(8.0), 0.5, d, 1e-10, 1e-12);
  CHECK_THROWS_AS(total_mass(sol), tail_divergence_error);
}

TEST_CASE("RadialSolution: dense output, gradient, superlevel inversion") {
  const Dimension d = dimension_constants(2);
  const RadialSolution sol = integrate_radial(std::log(8.0), 100.0, d, 1e-10, 1e-12);
  const ExactSolution ref = family_member(d, 1.0, {0, 0});

  // dense value and derivative between nodes (cubic Hermite grade)
  for (double r : {1e-8, 1e-4, 0.37, 1.0, 7.3, 42.0}) {
    CHECK(std::abs(sol.value_radial(r) - ref.value_radial(r)) <= 1e-7);
    CHECK(std::abs(sol.radial_derivative(r) - ref.radial_derivative(r)) <=
          1e-6 * (1.0 + std::abs(ref.radial_derivative(r))));
  }
  // point interface
  const Vec x{0.6, -0.8};  // |x| = 1
  CHECK(sol.value(x) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  const Vec g = sol.gradient(x);
  CHECK(norm(g) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(g[0] == doctest::Approx(-2.0 * 0.6).epsilon(1e-8));

  // superlevel radius of the numeric profile: |U(R) - t| <= 1e-12
  for (double t : {std::log(2.0), -3.0, -10.0}) {
    const double R = sol.superlevel_radius_radial(t);
    CHECK(std::abs(sol.value_radial(R) - t) <= 1e-12);
    CHECK(R == doctest::Approx(ref.superlevel_radius_radial(t)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(sol.superlevel_radius_radial(std::log(8.0) + 0.1), std::domain_error);
  CHECK_THROWS_AS(sol.superlevel_radius_radial(sol.value_radial(100.0) - 1.0),
                  std::domain_error);
}

TEST_CASE("integrate_radial: profile CSV dump schema") {
  const Dimension d = dimension_constants(2);
  const RadialSolution sol = integrate_radial(std::log(8.0), 10.0, d, 1e-8, 1e-10);
  const std::string csv = profile_csv(sol, std::vector<double>{0.5, 1.0, 2.0});
  CHECK(csv.rfind("r,U,dU_dr,flux,mass_in_ball\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
