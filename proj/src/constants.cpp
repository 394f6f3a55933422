#include "liouville/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace liouville {

Dimension dimension_constants(int n) {
  if (n < 2) throw std::domain_error("dimension_constants: n must be >= 2, got " + std::to_string(n));
  if (n > 16) throw std::domain_error("dimension_constants: n capped at 16, got " + std::to_string(n));

  Dimension d;
  d.n = n;
  const double nd = static_cast<double>(n);
  d.beta_n = nd * nd / (nd - 1.0);
  d.c_n = nd * powi(d.beta_n, n - 1);
  d.omega_n = std::exp(0.5 * nd * std::log(std::numbers::pi) - std::lgamma(0.5 * nd + 1.0));
  d.sigma = nd * d.omega_n;
  d.mass_quantum = d.c_n * d.omega_n;
  return d;
}

}  // namespace liouville
