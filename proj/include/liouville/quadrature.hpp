#pragma once

#include <functional>
#include <span>

#include "liouville/constants.hpp"
#include "liouville/errors.hpp"
#include "liouville/vec.hpp"

namespace liouville {

/// Deterministic quadrature configuration. Everything is a fixed rule; there
/// is no randomized integration anywhere in this library.
struct QuadratureSpec {
  int panel_order = 16;        // Gauss nodes per panel
  int panels = 4;              // initial panel count, doubled until converged
  double target_rel_err = 1e-10;
  int circle_nodes = 256;      // n=2 sphere rule: equispaced trapezoid
  int polar_nodes = 64;        // n=3 rule: Gauss in cos(polar) ...
  int azimuth_nodes = 128;     // ... times equispaced azimuth
  int max_doublings = 20;
};

struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;
  int panels_used = 0;
};

/// Batch integrand over radii: fills out[i] = f(r[i]).
using RadialBatchFn = std::function<void(std::span<const double>, std::span<double>)>;

RadialBatchFn batch_from_scalar(std::function<double(double)> f);

/// Gauss-Legendre nodes/weights on [-1, 1] (cached per order).
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Composite Gauss-Legendre on [a, b] with panel doubling; err_est is the
/// change under the last doubling. Throws precision_error if the doubling
/// cap is reached before err_est <= target_rel_err * |value|.
IntegralResult radial_integral(const RadialBatchFn& f, double a, double b,
                               const QuadratureSpec& spec);
IntegralResult radial_integral(const std::function<double(double)>& f, double a, double b,
                               const QuadratureSpec& spec);

/// Same, but with interior break points (each subinterval converged to the
/// target separately). Breaks outside (a, b) are ignored.
IntegralResult radial_integral_split(const RadialBatchFn& f, double a, double b,
                                     std::span<const double> breaks, const QuadratureSpec& spec);

/// Surface batch: SoA node coordinates and unit outward normals on the
/// sphere of radius R about y. coord[2]/nrm[2] are empty when n = 2.
struct SphereBatch {
  int n = 0;
  double R = 0.0;
  std::span<const double> coord[3];
  std::span<const double> nrm[3];
};

using SphereBatchFn = std::function<void(const SphereBatch&, std::span<double>)>;

/// Integral of g over the sphere of radius R about y. Supports n in {2, 3}
/// (throws unsupported_error otherwise). Spectrally accurate for smooth g.
double sphere_integral(const SphereBatchFn& g, double R, std::span<const double> y,
                       const Dimension& dim, const QuadratureSpec& spec);
double sphere_integral(const std::function<double(std::span<const double>)>& g, double R,
                       std::span<const double> y, const Dimension& dim,
                       const QuadratureSpec& spec);

/// Integral of g over the ball B_R(y): radial shells of sphere_integral
/// values. n in {2, 3}; optional break radii split the shell quadrature
/// (used when the integrand has a known feature radius inside the ball).
double ball_integral(const SphereBatchFn& g, double R, std::span<const double> y,
                     const Dimension& dim, const QuadratureSpec& spec,
                     std::span<const double> shell_breaks = {});
double ball_integral(const std::function<double(std::span<const double>)>& g, double R,
                     std::span<const double> y, const Dimension& dim,
                     const QuadratureSpec& spec);

/// Ball integral of a radial-about-center profile g(|x - y|): reduces to a
/// 1D weighted integral, valid for every supported dimension.
double ball_integral_radial(const RadialBatchFn& g, double R, const Dimension& dim,
                            const QuadratureSpec& spec);

}  // namespace liouville
