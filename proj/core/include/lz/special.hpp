#pragma once

#include <complex>

namespace lz {

// Principal-branch complex log-gamma, continuous on the right half plane and
// real on the positive real axis.  Throws std::domain_error unless Re z > 0.
// Absolute accuracy is ~1e-13 for |Im z| <= 100 (shift-and-Stirling scheme).
std::complex<double> log_gamma(std::complex<double> z);

// Imaginary part of log_gamma: the continuously unwrapped argument of
// Gamma(z).  Same domain and accuracy as log_gamma.
double log_gamma_arg(std::complex<double> z);

enum class ChiMethod { exact, small_omega_series, large_omega_series };

struct ChiResult {
  double value;       // phase in (0, pi/2]
  ChiMethod method;   // how the value was obtained
};

// Crossing-point phase chi(omega): gamma-function expression, monotone from
// pi/4 at omega = 0 toward pi/2 as omega grows.  Requires omega >= 0.
ChiResult chi_exact(double omega);

// Truncated expansions of chi: a small-coupling series for omega^2 <= 1 and a
// large-coupling series otherwise.  The residual is O(omega^10) on the small
// side and O(omega^-10) on the large side; accuracy degrades near the
// crossover omega ~ 1, where chi_exact should be used instead.
ChiResult chi_series(double omega);

}  // namespace lz
