#include "lz/special.hpp"

#include <cmath>
#include <stdexcept>

#include "lz/constants.hpp"

namespace lz {

namespace {

// Stirling-series coefficients B_{2k} / ((2k)(2k-1)) for k = 1..8.
constexpr double stirling_coef[8] = {
    1.0 / 12.0,           -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,
};

constexpr double half_log_two_pi = 0.91893853320467274178032973640562;

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error("log_gamma: non-finite argument");
  }
  if (z.real() <= 0.0) {
    throw std::domain_error("log_gamma: argument must satisfy Re z > 0");
  }

  // Shift the argument until the Stirling series converges fast, folding the
  // recurrence Gamma(z) = Gamma(z+n) / (z (z+1) ... (z+n-1)) into a log sum.
  std::complex<double> shift{0.0, 0.0};
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }

  const std::complex<double> inv2 = 1.0 / (z * z);
  std::complex<double> tail{stirling_coef[7], 0.0};
  for (int k = 6; k >= 0; --k) {
    tail = tail * inv2 + stirling_coef[k];
  }
  tail /= z;

  return (z - 0.5) * std::log(z) - z + half_log_two_pi + tail - shift;
}

double log_gamma_arg(std::complex<double> z) { return log_gamma(z).imag(); }

ChiResult chi_exact(double omega) {
  if (!std::isfinite(omega) || omega < 0.0) {
    throw std::domain_error("chi_exact: omega must be finite and >= 0");
  }
  const double q = 0.25 * omega * omega;
  if (q == 0.0) {
    return {quarter_pi, ChiMethod::exact};
  }
  const double value = quarter_pi + log_gamma_arg({0.5, -q}) - log_gamma_arg({1.0, -q});
  return {value, ChiMethod::exact};
}

ChiResult chi_series(double omega) {
  if (!std::isfinite(omega) || omega < 0.0) {
    throw std::domain_error("chi_series: omega must be finite and >= 0");
  }
  const double w2 = omega * omega;
  if (w2 <= 1.0) {
    const double value = quarter_pi + 0.5 * ln2 * w2 - (zeta3 / 32.0) * w2 * w2 * w2;
    return {value, ChiMethod::small_omega_series};
  }
  const double u = 1.0 / w2;
  const double value = half_pi - 0.5 * u - (u * u * u) / 3.0;
  return {value, ChiMethod::large_omega_series};
}

}  // namespace lz
