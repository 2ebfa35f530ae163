#pragma once

#include <complex>
#include <vector>

#include "lz/model.hpp"

namespace lz {

// Tolerances, sampling grid and safety margins for the evolution engines.
// tau_max is the one-sided horizon: traces cover [0, tau_max] (forward) or
// [-tau_max, 0] (backward) on a uniform grid with spacing sample_step.
// origin_offset is the half-width of the window around tau = 0 inside which
// the diabatic engine switches from the integrator to a local polynomial
// (the third-derivative equation it integrates has a removable singularity
// at the crossing).  theta_guard keeps the adiabatic engine away from the
// poles of its angular equation at theta = 0 and pi/2.
struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;  // 0 = unrestricted
  double origin_offset = 1e-3;
  double tau_max = 40.0;
  double sample_step = 0.01;
  double theta_guard = 1e-4;
};

// Throws std::invalid_argument unless the configuration is usable:
// rel_tol and abs_tol in (0, 1e-2], origin_offset in (0, 0.5],
// theta_guard in (0, 0.3], tau_max > 0, sample_step > 0, max_step >= 0,
// everything finite.
void validate_config(const IntegratorConfig& cfg);

enum class Direction { forward, backward };

enum class TraceSource { inversion_ode, schrodinger_oracle, closed_form_approx };

struct TraceSample {
  double tau;
  double p;
};

// A sampled probability evolution P(tau).  Samples are strictly increasing in
// tau.  Values satisfy 0 <= p <= 1 + 10*abs_tol up to integration error;
// negative round-off down to -10*abs_tol is clamped to zero.
struct ProbabilityTrace {
  Basis basis;
  TraceSource source;
  double omega;
  std::vector<TraceSample> samples;
};

// Initial condition for the amplitude-level reference evolution: either the
// bare diabatic state (1, 0) or the instantaneous adiabatic ground state at
// the starting time (pure phi_2, so the adiabatic transition probability
// starts at exactly zero).
enum class OracleStart { diabatic_state, adiabatic_state };

struct AmplitudeSample {
  double tau;
  std::complex<double> c1;
  std::complex<double> c2;
};

// Evolves the diabatic transition probability on tau in [0, tau_max]
// (forward) or [-tau_max, 0] (backward) by integrating the third-order
// equation satisfied by 2*P - 1, started from exact crossing-point data.
// Returned samples are ascending in tau in both directions.
ProbabilityTrace integrate_diabatic_inversion(const LzParams& params,
                                              const IntegratorConfig& cfg,
                                              Direction direction);

// Same contract for the adiabatic transition probability.  Internally the
// independent variable is the mixing angle theta, which compactifies the
// whole time axis into (0, pi/2); the horizon must keep
// theta(tau_max) at least theta_guard away from the interval ends, otherwise
// IntegrationError is thrown naming the largest reachable horizon.
ProbabilityTrace integrate_adiabatic_inversion(const LzParams& params,
                                               const IntegratorConfig& cfg,
                                               Direction direction);

// Amplitude-level reference evolution: integrates the two-level Schrodinger
// system from tau_initial (must be < -1, i.e. well before the crossing) up to
// +tau_max, reporting both complex amplitudes on the grid points
// k*sample_step that lie in [max(tau_initial, -tau_max), tau_max].
std::vector<AmplitudeSample> schrodinger_amplitudes(
    const LzParams& params, double tau_initial, const IntegratorConfig& cfg,
    OracleStart start = OracleStart::diabatic_state);

// Reference diabatic transition probability |c2(tau)|^2 for a system started
// in the bare state (1, 0) at tau_initial.  Grid as above.
ProbabilityTrace integrate_schrodinger_oracle(const LzParams& params,
                                              double tau_initial,
                                              const IntegratorConfig& cfg);

// Convenience composition of the backward and forward inversion evolutions,
// restricted to tau in [tau_lo, tau_hi] (tau = 0 is included exactly when the
// interval contains it).
ProbabilityTrace inversion_trace(const LzParams& params,
                                 const IntegratorConfig& cfg, Basis basis,
                                 double tau_lo, double tau_hi);

}  // namespace lz
