#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liouville/exact_solution.hpp"
#include "liouville/quadrature.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("radial_integral: polynomial exactness at any order >= 1") {
  QuadratureSpec spec;
  spec.panels = 1;
  for (int order : {1, 2, 5, 16}) {
    spec.panel_order = order;
    const auto res = radial_integral([](double r) { return r; }, 0.0, 1.0, spec);
    CHECK(res.value == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("radial_integral: n = 2 mass integrand over the unit ball is 4 pi") {
  // antiderivative oracle: d/dr [ -8 pi / (1 + r^2) ] = 2 pi r * 8 / (1+r^2)^2
  const double expected = -8.0 * kPi / 2.0 + 8.0 * kPi;  // = 4 pi
  QuadratureSpec spec;
  const auto res = radial_integral(
      [](double r) { return 2.0 * kPi * r * 8.0 / ((1.0 + r * r) * (1.0 + r * r)); }, 0.0, 1.0,
      spec);
  CHECK(res.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(res.value == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(res.err_est <= spec.target_rel_err * std::abs(res.value));
}

TEST_CASE("radial_integral: weighted Sobolev tail integrand reaches 2 pi^2") {
  // integral over [1, inf) of 8 pi / (1 + r^2) dr = 8 pi * (pi/2 - pi/4) = 2 pi^2
  QuadratureSpec spec;
  double total = 0.0;
  double lo = 1.0;
  for (double hi : {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
    total += radial_integral([](double r) { return 8.0 * kPi / (1.0 + r * r); }, lo, hi, spec)
                 .value;
    lo = hi;
  }
  const double tail = 8.0 * kPi * (kPi / 2.0 - std::atan(1e6));
  CHECK(total + tail == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("radial_integral: doubling panels shrinks the error by >= 4 on smooth data") {
  QuadratureSpec spec;
  spec.panel_order = 4;  // low order so refinement is visible
  spec.panels = 1;
  const auto f = [](double r) { return std::exp(-r) * std::cos(3.0 * r); };
  const double truth = oracles::adaptive_simpson(f, 0.0, 2.0, 1e-15);
  double prev_err = -1.0;
  for (int panels : {1, 2, 4, 8}) {
    std::vector<double> gx, gw;
    gauss_legendre(spec.panel_order, gx, gw);
    double acc = 0.0;
    const double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p)
      for (int j = 0; j < spec.panel_order; ++j)
        acc += 0.5 * h * gw[j] * f(p * h + 0.5 * h * (gx[j] + 1.0));
    const double err = std::abs(acc - truth);
    if (prev_err > 1e-14) CHECK(err * 4.0 <= prev_err);
    prev_err = err;
  }
}

TEST_CASE("radial_integral: argument validation and non-convergence") {
  QuadratureSpec spec;
  CHECK_THROWS_AS(radial_integral([](double r) { return r; }, 1.0, 0.5, spec),
                  std::domain_error);
  CHECK_THROWS_AS(radial_integral([](double r) { return r; }, -1.0, 1.0, spec),
                  std::domain_error);
  spec.max_doublings = 2;
  spec.panels = 1;
  spec.panel_order = 2;
  spec.target_rel_err = 1e-15;
  // a kink keeps the low-order rule from converging in two doublings
  CHECK_THROWS_AS(
      radial_integral([](double r) { return std::abs(r - 0.3217); }, 0.0, 1.0, spec),
      precision_error);
}

TEST_CASE("sphere_integral: constants, odd integrands, and degree exactness") {
  QuadratureSpec spec;
  const Dimension d2 = dimension_constants(2);
  const Dimension d3 = dimension_constants(3);
  const Vec y2{0.3, -0.5};
  const Vec y3{0.1, 0.2, -0.3};

  // circumference 2*pi*R and sphere area 4*pi*R^2
  CHECK(sphere_integral([](std::span<const double>) { return 1.0; }, 2.0, y2, d2, spec) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(sphere_integral([](std::span<const double>) { return 1.0; }, 1.0, y3, d3, spec) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-13));

  // odd component of the normal integrates to zero
  const double odd2 = sphere_integral(
      [&](std::span<const double> x) { return (x[0] - y2[0]) / 1.7; }, 1.7, y2, d2, spec);
  CHECK(std::abs(odd2) <= 1e-12 * 2.0 * kPi * 1.7);
  const double odd3 = sphere_integral(
      [&](std::span<const double> x) { return (x[2] - y3[2]) / 2.0; }, 2.0, y3, d3, spec);
  CHECK(std::abs(odd3) <= 1e-12 * 4.0 * kPi * 4.0);

  // quadratic harmonic x^2 - y^2 over a centered sphere vanishes as well
  const double harm = sphere_integral(
      [&](std::span<const double> x) {
        const double a = x[0] - y3[0], b = x[1] - y3[1];
        return a * a - b * b;
      },
      1.0, y3, d3, spec);
  CHECK(std::abs(harm) <= 1e-12);

  CHECK_THROWS_AS(sphere_integral([](std::span<const double>) { return 1.0; }, 1.0,
                                  zeros(4), dimension_constants(4), spec),
                  unsupported_error);
}

TEST_CASE("ball_integral: volumes to 1e-12 relative") {
  QuadratureSpec spec;
  const Dimension d2 = dimension_constants(2);
  const Dimension d3 = dimension_constants(3);
  const auto one = [](std::span<const double>) { return 1.0; };
  CHECK(ball_integral(one, 1.5, Vec{0.2, 0.1}, d2, spec) ==
        doctest::Approx(d2.omega_n * std::pow(1.5, 2)).epsilon(1e-12));
  CHECK(ball_integral(one, 2.0, Vec{0.0, 0.4, -0.1}, d3, spec) ==
        doctest::Approx(d3.omega_n * 8.0).epsilon(1e-12));
  CHECK(ball_integral(one, 2.0, Vec{0.0, 0.4, -0.1}, d3, spec) ==
        doctest::Approx(32.0 * kPi / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(ball_integral(one, 1.0, zeros(4), dimension_constants(4), spec),
                  unsupported_error);
}

TEST_CASE("ball_integral: centered mass of e^U reproduces the flux value") {
  QuadratureSpec spec;
  const Dimension d2 = dimension_constants(2);
  const ExactSolution sol = family_member(d2, 1.0, {0, 0});
  const double got = ball_integral(
      [&](std::span<const double> x) { return std::exp(sol.value(x)); }, 1.0, Vec{0.0, 0.0}, d2,
      spec);
  CHECK(got == doctest::Approx(4.0 * kPi).epsilon(1e-10));
  // radial fast path
  const double radial = ball_integral_radial(
      [&](std::span<const double> r, std::span<double> out) { sol.radial_exp_values(r, out); },
      1.0, d2, spec);
  CHECK(radial == doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("ball_integral: off-center mass against the tensor-product oracle") {
  QuadratureSpec spec;
  spec.target_rel_err = 1e-9;
  const Dimension d2 = dimension_constants(2);
  const ExactSolution sol = family_member(d2, 1.0, {0, 0});
  const Vec y{0.3, 0.0};
  const auto f = [&](const Vec& x) { return std::exp(sol.value(x)); };
  const double oracle = oracles::disk_tensor_integral(f, y, 1.0);
  const double got = ball_integral(
      [&](std::span<const double> x) { return std::exp(sol.value(x)); }, 1.0, y, d2, spec);
  CHECK(got > 0.0);
  CHECK(got < 8.0 * kPi);
  CHECK(std::abs(got - oracle) / oracle <= 1e-7);
}
