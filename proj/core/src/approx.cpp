#include "lz/approx.hpp"

#include <cmath>

#include "lz/constants.hpp"
#include "lz/special.hpp"

namespace lz {

double phase_xi(const LzParams& params, double tau) {
  const double w2 = params.omega * params.omega;
  const double r = std::sqrt(tau * tau + w2);
  // tau + r loses digits for tau << -omega; rewrite via the conjugate there.
  const double tau_plus_r = tau >= 0.0 ? tau + r : w2 / (r - tau);
  return -0.5 * w2 + w2 * std::log(tau_plus_r / sqrt2) + tau * r + quarter_pi +
         log_gamma_arg({1.0, -0.5 * w2});
}

EvolutionEstimate pd_approx(const LzParams& params, double tau,
                            double validity_threshold) {
  const double w = params.omega;
  const double w2 = w * w;
  const double r2 = tau * tau + w2;
  const double r = std::sqrt(r2);
  const bool valid = r2 >= validity_threshold;

  if (tau < 0.0) {
    const double p = 0.5 + 0.5 * tau / r;
    return {p, p, p, p, valid};
  }

  const double a = pi * w2;
  const double e_full = std::exp(-a);
  const double e_half = std::exp(-0.5 * a);
  const double s = std::sqrt(-std::expm1(-a));
  const double nonosc = 0.5 + (0.5 - e_full) * tau / r;
  const double amp = e_half * s * w / r;
  const double p = nonosc - amp * std::cos(phase_xi(params, tau));
  return {p, nonosc + amp, nonosc - amp, nonosc, valid};
}

EvolutionEstimate pa_approx(const LzParams& params, double tau,
                            double validity_threshold) {
  const double w = params.omega;
  const double w2 = w * w;
  const double r2 = tau * tau + w2;
  const bool valid = r2 >= validity_threshold;
  const double lorentz3 = w2 / (16.0 * r2 * r2 * r2);

  if (tau < 0.0) {
    return {lorentz3, lorentz3, lorentz3, lorentz3, valid};
  }

  const double a = pi * w2;
  const double e_full = std::exp(-a);
  const double e_half = std::exp(-0.5 * a);
  const double s = std::sqrt(-std::expm1(-a));
  const double nonosc = e_full + (1.0 - 2.0 * e_full) * lorentz3;
  const double amp = e_half * s * w / (2.0 * r2 * std::sqrt(r2));
  const double p = nonosc + amp * std::sin(phase_xi(params, tau));
  return {p, nonosc + amp, nonosc - amp, nonosc, valid};
}

}  // namespace lz
