#pragma once

#include <stdexcept>

namespace liouville {

/// Dimensional constants of the n-Laplace Liouville problem.
///
/// For integer dimension n >= 2:
///   c_n          = n * (n^2/(n-1))^(n-1)      peak density constant
///   omega_n      = |B_1(0)| = pi^(n/2) / Gamma(n/2 + 1)
///   sigma        = |S^(n-1)| = n * omega_n
///   beta_n       = n^2/(n-1) = (c_n/n)^(1/(n-1))   far-field log slope
///   mass_quantum = c_n * omega_n                    total mass of every
///                                                   member of the family
/// beta_n > n for every n >= 2, which is what makes the e^U tail integrable.
struct Dimension {
  int n = 0;
  double c_n = 0.0;
  double omega_n = 0.0;
  double sigma = 0.0;
  double beta_n = 0.0;
  double mass_quantum = 0.0;

  // radial exponent n/(n-1), used everywhere in the family's closed forms
  double m() const { return static_cast<double>(n) / (n - 1); }
};

// Integer power by repeated squaring; exact association order so scalar and
// SIMD code paths agree bit-for-bit.
template <class V>
inline V powi(V base, int e) {
  V acc = V(1.0);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

/// Builds the constant set for dimension n.
/// omega_n goes through lgamma so large n cannot overflow; n is capped at 16
/// because the constants explode past any radius this tool integrates over.
/// Throws std::domain_error for n < 2 or n > 16.
Dimension dimension_constants(int n);

}  // namespace liouville
