#include "lz/model.hpp"

#include <cmath>
#include <stdexcept>

#include "lz/constants.hpp"
#include "lz/special.hpp"

namespace lz {

LzParams::LzParams(double omega_value) : omega(omega_value) {
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw std::domain_error("LzParams: omega must be finite and > 0");
  }
}

double p_infinity(const LzParams& params, Basis basis) {
  const double a = pi * params.omega * params.omega;
  return basis == Basis::diabatic ? -std::expm1(-a) : std::exp(-a);
}

BoundaryValues boundary_values(const LzParams& params, Basis basis) {
  const double w = params.omega;
  const double w2 = w * w;
  const double a = pi * w2;
  const double e_full = std::exp(-a);        // survival factor
  const double e_half = std::exp(-0.5 * a);
  const double s = std::sqrt(-std::expm1(-a));
  const double chi = chi_exact(w).value;
  const double cs = std::cos(chi);
  const double sn = std::sin(chi);

  if (basis == Basis::diabatic) {
    return {
        -0.5 * std::expm1(-0.5 * a),  // (1 - e^{-a/2}) / 2
        w * s * cs,
        2.0 * w2 * e_half,
        -std::expm1(-a),
    };
  }
  return {
      0.5 * (1.0 - s * sn),
      e_half / (2.0 * w),
      s * (sn / (2.0 * w2) - cs),
      e_full,
  };
}

double mixing_angle(const LzParams& params, double tau) {
  return 0.5 * std::atan2(params.omega, tau);
}

FrameQuantities adiabatic_frame_quantities(const LzParams& params, double tau) {
  const double r2 = tau * tau + params.omega * params.omega;
  return {std::sqrt(r2), -0.5 * params.omega / r2};
}

std::array<std::complex<double>, 2> rotate_to_adiabatic(
    const std::array<std::complex<double>, 2>& c, double theta) {
  const double norm = std::norm(c[0]) + std::norm(c[1]);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "rotate_to_adiabatic: state norm deviates from 1 by more than 1e-9");
  }
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {cs * c[0] - sn * c[1], sn * c[0] + cs * c[1]};
}

}  // namespace lz
