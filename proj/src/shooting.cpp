#include "liouville/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

// cubic Hermite on [x0, x1] given endpoint values and derivatives
double hermite(double x, double x0, double x1, double f0, double f1, double d0, double d1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return f0 * (2 * t3 - 3 * t2 + 1) + f1 * (-2 * t3 + 3 * t2) + h * d0 * (t3 - 2 * t2 + t) +
         h * d1 * (t3 - t2);
}

}  // namespace

std::pair<double, double> series_start(double alpha, double r0, const Dimension& dim) {
  if (!(r0 > 0.0)) throw std::domain_error("series_start: r0 must be > 0");
  const double n = dim.n;
  const double coeff = ((n - 1.0) / n) * std::exp((alpha - std::log(n)) / (n - 1.0));
  const double u0 = alpha - coeff * std::pow(r0, dim.m());
  const double w0 = -std::exp(alpha) * powi(r0, dim.n) / n;
  return {u0, w0};
}

// ---- RadialSolution ---------------------------------------------------------

std::size_t RadialSolution::locate(double s) const {
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - s_.begin());
  if (i == 0) i = 1;
  if (i >= s_.size()) i = s_.size() - 1;
  return i - 1;
}

double RadialSolution::series_u(double r) const {
  const double rm = std::pow(r, dim_.m());
  return alpha_ - series_coeff_ * rm + series_coeff2_ * rm * rm;
}

double RadialSolution::series_du(double r) const {
  const double m = dim_.m();
  const double rm = std::pow(r, m);
  return (-series_coeff_ * m + 2.0 * m * series_coeff2_ * rm) * rm / r;
}

double RadialSolution::value_radial(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("value_radial: r must be >= 0");
  if (r < r0_) return series_u(r);
  if (r > r_max_) {
    if (r <= r_max_ * (1.0 + 1e-12)) r = r_max_;
    else throw std::domain_error("value_radial: r beyond profile range r_max");
  }
  const double s = std::log(r);
  const std::size_t i = locate(s);
  return hermite(s, s_[i], s_[i + 1], u_[i], u_[i + 1], dus_[i], dus_[i + 1]);
}

double RadialSolution::radial_derivative(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("radial_derivative: r must be >= 0");
  if (r == 0.0) return 0.0;
  if (r < r0_) return series_du(r);
  if (r > r_max_) {
    if (r <= r_max_ * (1.0 + 1e-12)) r = r_max_;
    else throw std::domain_error("radial_derivative: r beyond profile range r_max");
  }
  const double s = std::log(r);
  const std::size_t i = locate(s);
  // p = du/ds = r U' is strictly negative and spans many scales near the
  // center, so it is interpolated in log form (linear there); U' = p / r
  const double lp =
      hermite(s, s_[i], s_[i + 1], logp_[i], logp_[i + 1], dlogp_[i], dlogp_[i + 1]);
  return -std::exp(lp) / r;
}

double RadialSolution::flux_at(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("flux_at: r must be >= 0");
  if (r == 0.0) return 0.0;
  if (r < r0_)
    return -std::exp(alpha_) * powi(r, dim_.n) *
           (1.0 / dim_.n - series_coeff_ * std::pow(r, dim_.m()) / (dim_.n + dim_.m()));
  if (r > r_max_) {
    if (r <= r_max_ * (1.0 + 1e-12)) r = r_max_;
    else throw std::domain_error("flux_at: r beyond profile range r_max");
  }
  const double s = std::log(r);
  const std::size_t i = locate(s);
  const double z = hermite(s, s_[i], s_[i + 1], z_[i], z_[i + 1], dzs_[i], dzs_[i + 1]);
  return -std::exp(z);
}

double RadialSolution::mass_in_ball_radial(double R) const {
  if (!(R > 0.0) || R > r_max_ * (1.0 + 1e-12))
    throw std::domain_error("mass_in_ball: R outside (0, r_max]");
  return -dim_.sigma * flux_at(R);
}

double RadialSolution::superlevel_radius_radial(double t) const {
  if (!(t < alpha_))
    throw std::domain_error("superlevel_radius: level t >= peak value, superlevel set is empty");
  if (t < u_.back())
    throw std::domain_error("superlevel_radius: level below U(r_max), radius beyond profile");
  if (t == u_.back()) return r_.back();
  // first grid index with u_ < t (u_ is strictly decreasing)
  auto it = std::lower_bound(u_.begin(), u_.end(), t, [](double a, double b) { return a >= b; });
  if (it == u_.begin()) {
    // level above U(r0): invert the center series
    return std::pow((alpha_ - t) / series_coeff_, 1.0 / dim_.m());
  }
  const std::size_t hi = static_cast<std::size_t>(it - u_.begin());
  // bisect the Hermite interpolant down to |U(R) - t| <= 1e-12
  double lo_r = r_[hi - 1], hi_r = r_[hi];
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo_r + hi_r);
    const double um = value_radial(mid);
    if (std::abs(um - t) <= 1e-12) return mid;
    if (um > t) lo_r = mid;
    else hi_r = mid;
    if (hi_r - lo_r <= 1e-16 * hi_r) break;
  }
  return 0.5 * (lo_r + hi_r);
}

double RadialSolution::value(std::span<const double> x) const { return value_radial(norm(x)); }

Vec RadialSolution::gradient(std::span<const double> x) const {
  const double r = norm(x);
  if (r == 0.0) return zeros(x.size());
  const double du = radial_derivative(r);
  return scaled(x, du / r);
}

// ---- integrate_radial -------------------------------------------------------

RadialSolution integrate_radial(double alpha, double r_max, const Dimension& dim, double rtol,
                                double atol) {
  if (!(r_max > 0.0)) throw std::domain_error("integrate_radial: r_max must be > 0");
  if (!(rtol > 0.0 && rtol < 1e-2) || !(atol > 0.0 && atol < 1e-2))
    throw std::domain_error("integrate_radial: tolerances must lie in (0, 1e-2)");

  const int n = dim.n;
  const double nd = n;
  const double m = dim.m();
  const double inv_nm1 = 1.0 / (nd - 1.0);
  // center series u ~ alpha - A r^m + C r^{2m}; two terms beyond alpha keep
  // the start error near machine level at the default start radius, so the
  // accumulated error scales purely with the step control
  const double kappa = std::exp((alpha - std::log(nd)) * inv_nm1);  // (e^a/n)^{1/(n-1)}
  const double A = ((nd - 1.0) / nd) * kappa;
  const double C = kappa * nd * A / ((nd + m) * (nd - 1.0) * 2.0 * m);

  double r0 = std::min(1e-6, r_max / 16.0);
  // keep the neglected O(r0^{3m}) corrections below the tolerance floor even
  // for large center values
  if (A > 1.0) r0 = std::min(r0, 1e-6 / std::pow(A, 1.0 / m));

  RadialSolution sol;
  sol.dim_ = dim;
  sol.alpha_ = alpha;
  sol.series_coeff_ = A;
  sol.series_coeff2_ = C;
  sol.r0_ = r0;
  sol.r_max_ = r_max;
  sol.center_ = zeros(static_cast<std::size_t>(n));

  // state y = (u, z), z = log(-w), abscissa s = log r
  double s = std::log(r0);
  const double s_end = std::log(r_max);
  const double r0m = std::pow(r0, m);
  double u = alpha - A * r0m + C * r0m * r0m;
  double z = alpha + nd * std::log(r0) + std::log(1.0 / nd - A * r0m / (nd + m));

  auto rhs = [&](double ss, double uu, double zz, double& fu, double& fz) {
    fu = -std::exp(zz * inv_nm1);
    fz = std::exp(nd * ss + uu - zz);
  };

  auto push_node = [&](double ss, double uu, double zz, double fu, double fz) {
    const double r = std::exp(ss);
    sol.s_.push_back(ss);
    sol.r_.push_back(r);
    sol.u_.push_back(uu);
    sol.z_.push_back(zz);
    sol.dus_.push_back(fu);        // du/ds
    sol.dzs_.push_back(fz);        // dz/ds
    sol.d2us_.push_back(-std::exp(zz * inv_nm1) * fz * inv_nm1);  // d2u/ds2
    sol.du_.push_back(fu / r);     // U'(r)
    sol.w_.push_back(-std::exp(zz));
    sol.logp_.push_back(zz * inv_nm1);        // log(-du/ds) = z/(n-1)
    sol.dlogp_.push_back(fz * inv_nm1);       // d/ds of it
  };

  // Dormand-Prince 5(4), FSAL, PI step control
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double k1u, k1z;
  rhs(s, u, z, k1u, k1z);
  push_node(s, u, z, k1u, k1z);

  double h = std::min(0.05 * std::pow(rtol, 0.25), s_end - s);
  double err_old = 1e-4;
  long steps = 0;
  const long max_steps = 5000000;

  while (s < s_end) {
    if (++steps > max_steps)
      throw integration_error("integrate_radial: step limit exceeded", std::exp(s));
    h = std::min(h, s_end - s);
    if (!(h > std::abs(s) * 1e-15 + 1e-300))
      throw integration_error("integrate_radial: step size underflow", std::exp(s));

    double k2u, k2z, k3u, k3z, k4u, k4z, k5u, k5z, k6u, k6z, k7u, k7z;
    rhs(s + c2 * h, u + h * a21 * k1u, z + h * a21 * k1z, k2u, k2z);
    rhs(s + c3 * h, u + h * (a31 * k1u + a32 * k2u), z + h * (a31 * k1z + a32 * k2z), k3u, k3z);
    rhs(s + c4 * h, u + h * (a41 * k1u + a42 * k2u + a43 * k3u),
        z + h * (a41 * k1z + a42 * k2z + a43 * k3z), k4u, k4z);
    rhs(s + c5 * h, u + h * (a51 * k1u + a52 * k2u + a53 * k3u + a54 * k4u),
        z + h * (a51 * k1z + a52 * k2z + a53 * k3z + a54 * k4z), k5u, k5z);
    rhs(s + h, u + h * (a61 * k1u + a62 * k2u + a63 * k3u + a64 * k4u + a65 * k5u),
        z + h * (a61 * k1z + a62 * k2z + a63 * k3z + a64 * k4z + a65 * k5z), k6u, k6z);
    const double u5 = u + h * (b1 * k1u + b3 * k3u + b4 * k4u + b5 * k5u + b6 * k6u);
    const double z5 = z + h * (b1 * k1z + b3 * k3z + b4 * k4z + b5 * k5z + b6 * k6z);
    rhs(s + h, u5, z5, k7u, k7z);

    if (!std::isfinite(u5) || !std::isfinite(z5))
      throw integration_error("integrate_radial: non-finite state", std::exp(s));

    const double eu = h * (e1 * k1u + e3 * k3u + e4 * k4u + e5 * k5u + e6 * k6u + e7 * k7u);
    const double ez = h * (e1 * k1z + e3 * k3z + e4 * k4z + e5 * k5z + e6 * k6z + e7 * k7z);
    const double sc_u = atol + rtol * std::max(std::abs(u), std::abs(u5));
    const double sc_z = rtol;  // absolute on log|w| = relative on the flux
    // error-per-unit-step: the accumulated error then scales superlinearly
    // in the tolerance, so halving rtol more than halves the global error
    const double err =
        std::sqrt(0.5 * ((eu / sc_u) * (eu / sc_u) + (ez / sc_z) * (ez / sc_z))) / h;

    if (err <= 1.0) {
      s += h;
      u = u5;
      z = z5;
      k1u = k7u;  // FSAL
      k1z = k7z;
      push_node(s, u, z, k1u, k1z);
      const double e_clip = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e_clip, -0.175) * std::pow(err_old, 0.1);
      fac = std::clamp(fac, 0.2, 5.0);
      h *= fac;
      err_old = e_clip;
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.9);
    }
  }
  return sol;
}

double mass_in_ball(const RadialSolution& sol, double R) { return sol.mass_in_ball_radial(R); }

TotalMass total_mass(const RadialSolution& sol) {
  const auto r = sol.grid();
  const auto u = sol.u_values();
  const double r_max = sol.max_radius();
  const double lo = r_max / 10.0;
  std::size_t first = 0;
  while (first < r.size() && r[first] < lo) ++first;
  if (r.size() - first < 4) first = r.size() >= 4 ? r.size() - 4 : 0;

  // least squares u ~ C - beta log r over the window
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t k = r.size() - first;
  for (std::size_t i = first; i < r.size(); ++i) {
    const double x = std::log(r[i]);
    sx += x;
    sy += u[i];
    sxx += x * x;
    sxy += x * u[i];
  }
  const double det = k * sxx - sx * sx;
  const double slope = (k * sxy - sx * sy) / det;  // = -beta
  const double beta = -slope;
  const double intercept = (sy - slope * sx) / k;  // = C

  const Dimension& dim = sol.dim();
  if (!(beta > dim.n))
    throw tail_divergence_error(
        "total_mass: fitted tail slope " + std::to_string(beta) +
            " does not exceed n; the far field is not in the finite-mass regime at this range",
        beta);
  const double tail =
      dim.sigma * std::exp(intercept) * std::pow(r_max, dim.n - beta) / (beta - dim.n);
  TotalMass out;
  out.tail_estimate = tail;
  out.fitted_beta = beta;
  out.fitted_log_coeff = intercept;
  out.mass = sol.mass_in_ball_radial(r_max) + tail;
  return out;
}

double flux_consistency_max_rel(const RadialSolution& sol) {
  const auto radii = sol.grid();
  const auto u = sol.u_values();
  const auto du1 = sol.du_dlogr_values();
  const auto du2 = sol.d2u_dlogr2_values();
  const Dimension& dim = sol.dim();
  const double nd = dim.n;
  const std::size_t k = radii.size();
  // In the log-radius variable the integral is of exp(n s + u(s)); the
  // exponent, not the integrand, is the polynomial-like object, so each
  // grid interval is integrated by Gauss panels applied to exp(n s + u~),
  // u~ the two-point quintic Hermite of the node data (values and two
  // derivatives, all exact from the solver state), with panels sized so
  // the exponent varies by O(1) per panel.
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  // series piece over [0, r0], two terms
  const double r0 = sol.start_radius();
  const double mexp = dim.m();
  const double A = (nd - 1.0) / nd * std::exp((sol.alpha() - std::log(nd)) / (nd - 1.0));
  double acc = std::exp(sol.alpha() + nd * std::log(r0)) *
               (1.0 / nd - A * std::pow(r0, mexp) / (nd + mexp));
  const auto w = sol.flux_values();
  double worst = std::abs(w[0] + acc) / std::abs(w[0]);
  for (std::size_t i = 1; i < k; ++i) {
    const double s0 = std::log(radii[i - 1]);
    const double s1 = std::log(radii[i]);
    const double hs = s1 - s0;
    const int panels = 1 + static_cast<int>(nd * hs / 1.5);
    const double hp = hs / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = s0 + p * hp;
      for (int j = 0; j < 16; ++j) {
        const double s = lo + 0.5 * hp * (gx[j] + 1.0);
        const double t = (s - s0) / hs;
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        const double uh = u[i - 1] * (1 - 10 * t3 + 15 * t4 - 6 * t5) +
                          hs * du1[i - 1] * (t - 6 * t3 + 8 * t4 - 3 * t5) +
                          0.5 * hs * hs * du2[i - 1] * (t2 - 3 * t3 + 3 * t4 - t5) +
                          u[i] * (10 * t3 - 15 * t4 + 6 * t5) +
                          hs * du1[i] * (-4 * t3 + 7 * t4 - 3 * t5) +
                          0.5 * hs * hs * du2[i] * (t3 - 2 * t4 + t5);
        acc += 0.5 * hp * gw[j] * std::exp(nd * s + uh);
      }
    }
    worst = std::max(worst, std::abs(w[i] + acc) / std::abs(w[i]));
  }
  return worst;
}

std::string profile_csv(const SolutionField& sol, std::span<const double> radii) {
  std::string out = "r,U,dU_dr,flux,mass_in_ball\n";
  char line[256];
  for (double r : radii) {
    const double uu = sol.value_radial(r);
    const double du = sol.radial_derivative(r);
    const double mass = r == 0.0 ? 0.0 : sol.mass_in_ball_radial(r);
    const double flux = -mass / sol.dim().sigma;
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r, uu, du, flux, mass);
    out += line;
  }
  return out;
}

}  // namespace liouville
