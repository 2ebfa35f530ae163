#pragma once

#include "lz/model.hpp"

namespace lz {

// One closed-form sample of a transition-probability evolution: the value
// itself plus its decomposition into a nonoscillatory part and an oscillation
// envelope.  Before the crossing (tau < 0) the formulas carry no oscillating
// term, so p == nonoscillatory and both envelopes collapse onto it.
struct EvolutionEstimate {
  double p;
  double envelope_upper;
  double envelope_lower;
  double nonoscillatory;
  bool valid;  // tau^2 + omega^2 >= validity threshold
};

// Accumulated oscillation phase xi(tau).  Its derivative is exactly
// 2*sqrt(tau^2 + omega^2) (twice the instantaneous gap).
double phase_xi(const LzParams& params, double tau);

// Closed-form diabatic evolution P_d(tau): a smooth step before the crossing,
// and after it a drifting baseline plus oscillations of amplitude
// ~ 1/sqrt(tau^2 + omega^2).  Accurate for tau^2 + omega^2 >~ 1; the `valid`
// flag reports that condition against `validity_threshold`.
EvolutionEstimate pd_approx(const LzParams& params, double tau,
                            double validity_threshold = 1.0);

// Closed-form adiabatic evolution P_a(tau): a Lorentzian-cubed rise before
// the crossing, and after it a baseline approaching P_a(inf) plus
// oscillations decaying as (tau^2 + omega^2)^{-3/2}.
EvolutionEstimate pa_approx(const LzParams& params, double tau,
                            double validity_threshold = 1.0);

}  // namespace lz
