#include "liouville/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "liouville/exact_solution.hpp"
#include "liouville/kernels.hpp"

namespace liouville {

namespace {

constexpr double kPi = std::numbers::pi;

bool centered_radial(const SolutionField& sol, std::span<const double> y) {
  if (!sol.is_radial()) return false;
  const auto c = sol.center();
  double d = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    d = std::max(d, std::abs(c[i] - y[i]));
    scale = std::max(scale, std::abs(y[i]));
  }
  return d <= 1e-14 * scale;
}

// batch of |x - p| over a sphere batch, through the active kernel lane
std::vector<double> batch_radii(const SphereBatch& b, std::span<const double> p) {
  std::vector<double> rho(b.coord[0].size());
  const double* coords[3] = {b.coord[0].data(), b.coord[1].data(),
                             b.n == 3 ? b.coord[2].data() : nullptr};
  kernels::active_ops().radii(coords, p.data(), b.n, rho.data(), rho.size());
  return rho;
}

// cos of the angle between (x - p) and the outward normal, per node
void batch_cos_to_normal(const SphereBatch& b, std::span<const double> p,
                         std::span<const double> rho, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    double dp = 0.0;
    for (int d = 0; d < b.n; ++d) dp += b.nrm[d][i] * (b.coord[d][i] - p[d]);
    out[i] = rho[i] == 0.0 ? 0.0 : dp / rho[i];
  }
}

double shifted(double expu, PohozaevWeight w) {
  return w == PohozaevWeight::exp_minus_one ? expu - 1.0 : expu;
}

}  // namespace

PohozaevReport pohozaev_residual(const SolutionField& sol, std::span<const double> y, double R,
                                 const QuadratureSpec& spec, PohozaevWeight weight) {
  if (!(R > 0.0)) throw std::domain_error("pohozaev_residual: R must be > 0");
  const Dimension& dim = sol.dim();
  const double n = dim.n;
  PohozaevReport rep;
  rep.y.assign(y.begin(), y.end());
  rep.R = R;

  if (centered_radial(sol, y)) {
    // boundary integrands are constant on the sphere
    const RadialBatchFn interior = [&](std::span<const double> r, std::span<double> out) {
      sol.radial_exp_values(r, out);
      if (weight == PohozaevWeight::exp_minus_one)
        for (double& v : out) v -= 1.0;
    };
    rep.lhs = n * ball_integral_radial(interior, R, dim, spec);
    const double uR = sol.value_radial(R);
    const double q = std::abs(sol.radial_derivative(R));
    const double area = dim.sigma * std::pow(R, n - 1.0);
    rep.boundary_F_term = shifted(std::exp(uR), weight) * R * area;
    rep.boundary_cross_term = powi(q, dim.n) * R * area;
    rep.boundary_energy_term = -powi(q, dim.n) / n * R * area;
  } else {
    if (dim.n != 2 && dim.n != 3)
      throw unsupported_error(
          "pohozaev_residual: off-center geometry needs n in {2,3}, got n = " +
          std::to_string(dim.n));
    if (!sol.is_radial())
      throw unsupported_error("pohozaev_residual: only radial solution fields are constructed");
    const Vec p(sol.center().begin(), sol.center().end());
    const double offset = dist(p, y);

    const SphereBatchFn interior = [&](const SphereBatch& b, std::span<double> out) {
      const std::vector<double> rho = batch_radii(b, p);
      sol.radial_exp_values(rho, out);
      if (weight == PohozaevWeight::exp_minus_one)
        for (double& v : out) v -= 1.0;
    };
    // the profile loses smoothness at the solution center; split shells there
    const double breaks[1] = {offset};
    rep.lhs = n * ball_integral(interior, R, y, dim, spec,
                                offset < R ? std::span<const double>(breaks, 1)
                                           : std::span<const double>());

    const SphereBatchFn f_term = [&](const SphereBatch& b, std::span<double> out) {
      const std::vector<double> rho = batch_radii(b, p);
      sol.radial_exp_values(rho, out);
      for (double& v : out) v = shifted(v, weight) * R;
    };
    const SphereBatchFn cross_term = [&](const SphereBatch& b, std::span<double> out) {
      const std::vector<double> rho = batch_radii(b, p);
      std::vector<double> gm(rho.size()), ca(rho.size());
      sol.radial_grad_mags(rho, gm);
      batch_cos_to_normal(b, p, rho, ca);
      // <x-y, grad U> dU/dnu = R (dU/dnu)^2, dU/dnu = -|grad U| cos
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = powi(gm[i], dim.n - 2) * R * gm[i] * ca[i] * gm[i] * ca[i];
    };
    const SphereBatchFn energy_term = [&](const SphereBatch& b, std::span<double> out) {
      const std::vector<double> rho = batch_radii(b, p);
      std::vector<double> gm(rho.size());
      sol.radial_grad_mags(rho, gm);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = -powi(gm[i], dim.n) / n * R;
    };
    rep.boundary_F_term = sphere_integral(f_term, R, y, dim, spec);
    rep.boundary_cross_term = sphere_integral(cross_term, R, y, dim, spec);
    rep.boundary_energy_term = sphere_integral(energy_term, R, y, dim, spec);
  }
  rep.residual =
      rep.lhs - (rep.boundary_F_term + rep.boundary_cross_term + rep.boundary_energy_term);
  rep.rel_residual = std::abs(rep.residual) / (1.0 + std::abs(rep.lhs));
  return rep;
}

MassFluxResult mass_flux_identity(const SolutionField& sol, std::span<const double> y, double R,
                                  const QuadratureSpec& spec) {
  if (!(R > 0.0)) throw std::domain_error("mass_flux_identity: R must be > 0");
  const Dimension& dim = sol.dim();
  MassFluxResult res;
  if (centered_radial(sol, y)) {
    const RadialBatchFn interior = [&](std::span<const double> r, std::span<double> out) {
      sol.radial_exp_values(r, out);
    };
    res.interior = ball_integral_radial(interior, R, dim, spec);
    const double q = std::abs(sol.radial_derivative(R));
    res.flux = dim.sigma * std::pow(R, dim.n - 1.0) * powi(q, dim.n - 1);
  } else {
    if (dim.n != 2 && dim.n != 3)
      throw unsupported_error(
          "mass_flux_identity: off-center geometry needs n in {2,3}, got n = " +
          std::to_string(dim.n));
    if (!sol.is_radial())
      throw unsupported_error("mass_flux_identity: only radial solution fields are constructed");
    const Vec p(sol.center().begin(), sol.center().end());
    const double offset = dist(p, y);
    const SphereBatchFn interior = [&](const SphereBatch& b, std::span<double> out) {
      const std::vector<double> rho = batch_radii(b, p);
      sol.radial_exp_values(rho, out);
    };
    const double breaks[1] = {offset};
    res.interior = ball_integral(interior, R, y, dim, spec,
                                 offset < R ? std::span<const double>(breaks, 1)
                                            : std::span<const double>());
    const SphereBatchFn flux_term = [&](const SphereBatch& b, std::span<double> out) {
      const std::vector<double> rho = batch_radii(b, p);
      std::vector<double> gm(rho.size()), ca(rho.size());
      sol.radial_grad_mags(rho, gm);
      batch_cos_to_normal(b, p, rho, ca);
      // -|grad U|^{n-2} dU/dnu = |grad U|^{n-1} cos
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = powi(gm[i], dim.n - 1) * ca[i];
    };
    res.flux = sphere_integral(flux_term, R, y, dim, spec);
  }
  res.rel_gap = std::abs(res.interior - res.flux) / (1.0 + std::abs(res.interior));
  return res;
}

double limit_mass_root(const Dimension& dim) {
  const double n = dim.n;
  const double w = dim.omega_n;
  const double expo = n / (n - 1.0);
  const auto phi = [&](double g) { return n * g - w * (n - 1.0) * std::pow(g / (n * w), expo); };
  const auto dphi = [&](double g) {
    return n - (expo / n) * (n - 1.0) * std::pow(g / (n * w), expo - 1.0);
  };
  double lo = w, hi = std::pow(10.0, n) * dim.mass_quantum;
  double flo = phi(lo), fhi = phi(hi);
  if (!(flo > 0.0) || !(fhi < 0.0))
    throw std::runtime_error("limit_mass_root: bracket failure");
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = phi(x);
    if (fx > 0.0) lo = x;
    else hi = x;
    const double d = dphi(x);
    double next = d != 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
    if (std::abs(next - x) <= 1e-15 * std::abs(x)) return next;
    x = next;
  }
  return x;
}

namespace {

// deterministic unit directions: equispaced on the circle, a Fibonacci set
// on the 2-sphere, signed axes above n = 3
std::vector<Vec> unit_directions(int n, int count) {
  std::vector<Vec> dirs;
  count = std::max(count, 1);
  if (n == 2) {
    for (int j = 0; j < count; ++j) {
      const double th = 2.0 * kPi * j / count;
      dirs.push_back(Vec{std::cos(th), std::sin(th)});
    }
  } else if (n == 3) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / count;
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * kPi * j / golden;
      dirs.push_back(Vec{rad * std::cos(th), rad * std::sin(th), z});
    }
  } else {
    for (int j = 0; j < count; ++j) {
      Vec d(static_cast<std::size_t>(n), 0.0);
      d[(j / 2) % n] = (j % 2 == 0) ? 1.0 : -1.0;
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

}  // namespace

AsymptoticsReport asymptotics_report(const SolutionField& sol, std::span<const double> radii,
                                     int directions, const QuadratureSpec& spec) {
  if (radii.size() < 4)
    throw std::domain_error("asymptotics_report: need at least 4 radii for the fit");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw std::domain_error("asymptotics_report: radii must be positive and increasing");
  }
  const Dimension& dim = sol.dim();
  const std::vector<Vec> dirs = unit_directions(dim.n, directions);

  AsymptoticsReport rep;
  rep.radii.assign(radii.begin(), radii.end());

  for (double r : radii) {
    double acc = 0.0;
    for (const Vec& d : dirs) {
      const Vec x = scaled(d, r);
      acc += -dot(x, sol.gradient(x));
    }
    rep.slope_samples.push_back(acc / dirs.size());
  }

  // least squares -U ~ beta log r - C over the top decade of the ladder
  {
    const double lo = radii.back() / 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (radii[i] < lo && i + 2 < radii.size()) continue;
      const double x = std::log(radii[i]);
      const double yv = -sol.value(scaled(dirs[0], radii[i]));
      sx += x;
      sy += yv;
      sxx += x * x;
      sxy += x * yv;
      ++k;
    }
    rep.fitted_beta = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }

  for (double r : radii) {
    double worst = 0.0;
    for (const Vec& d : dirs) {
      const Vec x = scaled(d, 1.0 / r);
      const Vec kg = kelvin_gradient(sol, x);
      const double x2 = dot(x, x);
      double s2 = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) {
        // grad of beta log|x| is beta x / |x|^2
        const double diff = kg[c] - rep.fitted_beta * x[c] / x2;
        s2 += diff * diff;
      }
      worst = std::max(worst, std::sqrt(s2) / r);
    }
    rep.remainder_samples.push_back(worst);
  }

  for (double r : radii) {
    if (sol.is_radial()) {
      rep.gamma_from_flux.push_back(sol.mass_in_ball_radial(r));
    } else {
      const Vec origin = zeros(static_cast<std::size_t>(dim.n));
      rep.gamma_from_flux.push_back(ball_integral(
          [&](std::span<const double> x) { return std::exp(sol.value(x)); }, r, origin, dim,
          spec));
    }
  }
  return rep;
}

double weighted_sobolev_integral(const SolutionField& sol, double q, double R,
                                 const QuadratureSpec& spec) {
  const Dimension& dim = sol.dim();
  if (!(q >= 1.0 && q <= dim.n))
    throw std::domain_error("weighted_sobolev_integral: q must lie in [1, n]");
  if (!(R > 1.0)) throw std::domain_error("weighted_sobolev_integral: R must exceed 1");
  if (!sol.is_radial() || norm(sol.center()) != 0.0)
    throw unsupported_error("weighted_sobolev_integral: needs a radial solution centered at 0");
  const double expo = 2.0 * q - dim.n - 1.0;  // r^{n-1} r^{-2(n-q)} = r^{2q-n-1}
  const RadialBatchFn f = [&](std::span<const double> r, std::span<double> out) {
    sol.radial_grad_mags(r, out);
    for (std::size_t i = 0; i < r.size(); ++i)
      out[i] = std::pow(out[i], q) * std::pow(r[i], expo);
  };
  // split at decades: the integrand spans many scales between 1 and R
  std::vector<double> breaks;
  for (double b = 10.0; b < R; b *= 10.0) breaks.push_back(b);
  return dim.sigma * radial_integral_split(f, 1.0, R, breaks, spec).value;
}

}  // namespace liouville
