#include "liouville/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "liouville/kernels.hpp"

namespace liouville {

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const QuadratureSpec& spec) {
  if (spec.panel_order < 1) throw std::domain_error("QuadratureSpec: panel_order must be >= 1");
  if (spec.panels < 1) throw std::domain_error("QuadratureSpec: panels must be >= 1");
  if (!(spec.target_rel_err > 0.0))
    throw std::domain_error("QuadratureSpec: target_rel_err must be > 0");
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    std::vector<double> x(order), w(order);
    // Newton iteration on P_order, symmetric roots from Chebyshev guesses
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < order; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = order * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      x[i] = -z;
      x[order - 1 - i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      w[order - 1 - i] = w[i];
    }
    it = cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

RadialBatchFn batch_from_scalar(std::function<double(double)> f) {
  return [f = std::move(f)](std::span<const double> r, std::span<double> out) {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = f(r[i]);
  };
}

namespace {

double composite_pass(const RadialBatchFn& f, double a, double b, int panels, int order) {
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  const std::size_t total = static_cast<std::size_t>(panels) * order;
  std::vector<double> nodes(total), weights(total), values(total);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int j = 0; j < order; ++j) {
      const std::size_t idx = static_cast<std::size_t>(p) * order + j;
      nodes[idx] = lo + 0.5 * h * (gx[j] + 1.0);
      weights[idx] = 0.5 * h * gw[j];
    }
  }
  f(nodes, values);
  return kernels::pairwise_dot(weights, values);
}

}  // namespace

IntegralResult radial_integral(const RadialBatchFn& f, double a, double b,
                               const QuadratureSpec& spec) {
  check_spec(spec);
  if (!(a >= 0.0) || !(b > a))
    throw std::domain_error("radial_integral: need 0 <= a < b, got [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
  int panels = spec.panels;
  double prev = composite_pass(f, a, b, panels, spec.panel_order);
  for (int d = 0; d < spec.max_doublings; ++d) {
    panels *= 2;
    const double cur = composite_pass(f, a, b, panels, spec.panel_order);
    const double err = std::abs(cur - prev);
    if (err <= spec.target_rel_err * std::abs(cur) || err == 0.0)
      return IntegralResult{cur, err, panels};
    prev = cur;
  }
  throw precision_error("radial_integral: no convergence to rel err " +
                            std::to_string(spec.target_rel_err) + " after " +
                            std::to_string(spec.max_doublings) + " doublings",
                        prev, std::abs(prev) * spec.target_rel_err);
}

IntegralResult radial_integral(const std::function<double(double)>& f, double a, double b,
                               const QuadratureSpec& spec) {
  return radial_integral(batch_from_scalar(f), a, b, spec);
}

IntegralResult radial_integral_split(const RadialBatchFn& f, double a, double b,
                                     std::span<const double> breaks,
                                     const QuadratureSpec& spec) {
  std::vector<double> cuts{a};
  for (double c : breaks)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  IntegralResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const IntegralResult part = radial_integral(f, cuts[i], cuts[i + 1], spec);
    total.value += part.value;
    total.err_est += part.err_est;
    total.panels_used += part.panels_used;
  }
  return total;
}

double sphere_integral(const SphereBatchFn& g, double R, std::span<const double> y,
                       const Dimension& dim, const QuadratureSpec& spec) {
  check_spec(spec);
  if (!(R > 0.0)) throw std::domain_error("sphere_integral: R must be > 0");
  if (dim.n == 2) {
    const int K = spec.circle_nodes;
    std::vector<double> cx(K), cy(K), nx(K), ny(K), vals(K), wts(K, 2.0 * kPi * R / K);
    for (int j = 0; j < K; ++j) {
      const double th = 2.0 * kPi * j / K;
      nx[j] = std::cos(th);
      ny[j] = std::sin(th);
      cx[j] = y[0] + R * nx[j];
      cy[j] = y[1] + R * ny[j];
    }
    SphereBatch batch;
    batch.n = 2;
    batch.R = R;
    batch.coord[0] = cx;
    batch.coord[1] = cy;
    batch.nrm[0] = nx;
    batch.nrm[1] = ny;
    g(batch, vals);
    return kernels::pairwise_dot(wts, vals);
  }
  if (dim.n == 3) {
    std::vector<double> gc, gw;
    gauss_legendre(spec.polar_nodes, gc, gw);
    const int M = spec.azimuth_nodes;
    const std::size_t total = static_cast<std::size_t>(spec.polar_nodes) * M;
    std::vector<double> cx(total), cy(total), cz(total), nx(total), ny(total), nz(total),
        vals(total), wts(total);
    for (int i = 0; i < spec.polar_nodes; ++i) {
      const double c = gc[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int j = 0; j < M; ++j) {
        const double ph = 2.0 * kPi * j / M;
        const std::size_t idx = static_cast<std::size_t>(i) * M + j;
        nx[idx] = s * std::cos(ph);
        ny[idx] = s * std::sin(ph);
        nz[idx] = c;
        cx[idx] = y[0] + R * nx[idx];
        cy[idx] = y[1] + R * ny[idx];
        cz[idx] = y[2] + R * nz[idx];
        wts[idx] = gw[i] * (2.0 * kPi / M) * R * R;
      }
    }
    SphereBatch batch;
    batch.n = 3;
    batch.R = R;
    batch.coord[0] = cx;
    batch.coord[1] = cy;
    batch.coord[2] = cz;
    batch.nrm[0] = nx;
    batch.nrm[1] = ny;
    batch.nrm[2] = nz;
    g(batch, vals);
    return kernels::pairwise_dot(wts, vals);
  }
  throw unsupported_error("sphere_integral: surface rules cover n in {2,3}, got n = " +
                          std::to_string(dim.n));
}

namespace {

SphereBatchFn batch_from_point_fn(const std::function<double(std::span<const double>)>& g) {
  return [&g](const SphereBatch& b, std::span<double> out) {
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      double pt[3];
      for (int d = 0; d < b.n; ++d) pt[d] = b.coord[d][i];
      out[i] = g(std::span<const double>(pt, b.n));
    }
  };
}

}  // namespace

double sphere_integral(const std::function<double(std::span<const double>)>& g, double R,
                       std::span<const double> y, const Dimension& dim,
                       const QuadratureSpec& spec) {
  return sphere_integral(batch_from_point_fn(g), R, y, dim, spec);
}

double ball_integral(const SphereBatchFn& g, double R, std::span<const double> y,
                     const Dimension& dim, const QuadratureSpec& spec,
                     std::span<const double> shell_breaks) {
  if (dim.n != 2 && dim.n != 3)
    throw unsupported_error("ball_integral: off-center shells cover n in {2,3}, got n = " +
                            std::to_string(dim.n));
  const RadialBatchFn shells = [&](std::span<const double> radii, std::span<double> out) {
    for (std::size_t i = 0; i < radii.size(); ++i)
      out[i] = radii[i] == 0.0 ? 0.0 : sphere_integral(g, radii[i], y, dim, spec);
  };
  return radial_integral_split(shells, 0.0, R, shell_breaks, spec).value;
}

double ball_integral(const std::function<double(std::span<const double>)>& g, double R,
                     std::span<const double> y, const Dimension& dim,
                     const QuadratureSpec& spec) {
  return ball_integral(batch_from_point_fn(g), R, y, dim, spec);
}

double ball_integral_radial(const RadialBatchFn& g, double R, const Dimension& dim,
                            const QuadratureSpec& spec) {
  const double sigma = dim.sigma;
  const int n = dim.n;
  const RadialBatchFn weighted = [&](std::span<const double> r, std::span<double> out) {
    g(r, out);
    for (std::size_t i = 0; i < r.size(); ++i) out[i] *= sigma * powi(r[i], n - 1);
  };
  return radial_integral(weighted, 0.0, R, spec).value;
}

}  // namespace liouville
