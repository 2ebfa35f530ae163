#pragma once

#include <array>
#include <complex>

namespace lz {

// Scaled two-level avoided-crossing model.  All quantities are dimensionless:
// time tau = beta*t and coupling omega = Omega/beta, so the detuning crosses
// zero at tau = 0 with unit slope and the minimum adiabatic gap is 2*omega.
struct LzParams {
  double omega;

  // Throws std::domain_error unless omega is finite and > 0.
  explicit LzParams(double omega_value);
};

enum class Basis { diabatic, adiabatic };

// Crossing-point values of a transition probability P(tau): value and first
// two derivatives at tau = 0, plus the asymptotic limit P(+inf).
struct BoundaryValues {
  double p0;     // P(0)
  double dp0;    // P'(0)
  double d2p0;   // P''(0)
  double p_inf;  // P(+inf)
};

// Lorentzian-in-time quantities of the instantaneous eigenframe at tau.
struct FrameQuantities {
  double gap;       // half-splitting sqrt(tau^2 + omega^2)
  double coupling;  // nonadiabatic coupling  -omega / (2 (tau^2 + omega^2))
};

// Asymptotic transition probability P(+inf) in the requested basis.  The two
// bases are complementary: diabatic + adiabatic = 1 exactly.
double p_infinity(const LzParams& params, Basis basis);

// Exact crossing-point values (all expressible through elementary functions
// and the phase chi(omega)).
BoundaryValues boundary_values(const LzParams& params, Basis basis);

// Rotation angle from the diabatic to the adiabatic frame,
// theta = atan2(omega, tau) / 2, decreasing from pi/2 (tau -> -inf) through
// pi/4 (tau = 0) to 0 (tau -> +inf).
double mixing_angle(const LzParams& params, double tau);

FrameQuantities adiabatic_frame_quantities(const LzParams& params, double tau);

// Rotates a diabatic two-amplitude state into the adiabatic frame at angle
// theta.  The input must be normalized: | |c1|^2 + |c2|^2 - 1 | <= 1e-9,
// otherwise std::invalid_argument is thrown.  The adiabatic transition
// probability of the rotated state is |a[0]|^2.
std::array<std::complex<double>, 2> rotate_to_adiabatic(
    const std::array<std::complex<double>, 2>& c, double theta);

}  // namespace lz
