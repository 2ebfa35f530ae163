#pragma once

#include <optional>
#include <vector>

#include "lz/model.hpp"

namespace lz {

// Characteristic times of one transition-probability evolution.  Optional
// fields are absent when the corresponding quantity does not exist for the
// given coupling/threshold (e.g. oscillations that never exceed the floor) or
// was not part of the producing operation.
struct TransitionTimes {
  Basis basis;
  double epsilon;
  std::optional<double> jump;
  std::optional<double> jump_initial;  // start of the large-coupling jump window (<= 0)
  std::optional<double> jump_final;    // end of the large-coupling jump window (> 0)
  std::optional<double> relax;
};

// Tangent-line jump time of the diabatic probability, P_d(inf) / P_d'(0).
// Limits: sqrt(2*pi) for small omega, 2*omega for large omega.
double jump_time_diabatic(const LzParams& params);

// Last time the diabatic oscillation amplitude stays at or above
// epsilon * P_d(inf).  Absent (nullopt) when the oscillations never reach the
// floor, which happens for omega > sqrt(log(1/eps^2 + 1)/pi) (about 1.212 at
// epsilon = 0.1).  Throws std::domain_error unless 0 < epsilon < 1.
std::optional<double> relax_time_diabatic(const LzParams& params, double epsilon);

// Tangent-line jump time of the adiabatic probability, P_a(inf) / P_a'(0);
// meaningful for small coupling.  Equals 2*omega*exp(-pi*omega^2/2), with
// maximum at omega = 1/sqrt(pi).
double jump_time_adiabatic_small(const LzParams& params);

// Large-coupling jump window of the adiabatic probability: jump_initial is
// where the rising probability reaches epsilon * P_a(inf), jump_final where
// the nonoscillatory part last touches (1 + epsilon) * P_a(inf); jump is the
// window width.  Throws RegimeError when either root argument is not
// positive (small omega), std::domain_error for invalid epsilon.
TransitionTimes jump_time_adiabatic_large(const LzParams& params, double epsilon);

// Last time the adiabatic oscillation amplitude stays at or above
// epsilon * P_a(inf).  Throws RegimeError when the root argument is not
// positive, std::domain_error for invalid epsilon.
double relax_time_adiabatic(const LzParams& params, double epsilon);

// One row of a transition-time table.  Absent cells mean "does not exist in
// this regime" (per-entry regime failures never abort a table) or "policy
// does not report this column at this omega".
struct TimesRow {
  double omega;
  std::optional<double> jump_d;
  std::optional<double> relax_d;
  std::optional<double> jump_a_small;    // reported for omega <= 1
  std::optional<double> jump_a_initial;  // reported with the large-coupling window
  std::optional<double> jump_a_final;
  std::optional<double> jump_a_large;    // reported for omega >= 0.5
  std::optional<double> jump_a;          // recommended value (small branch below 0.75)
  std::optional<double> relax_a;
};

// Evaluates all transition-time formulas on a coupling grid.  Rows are
// computed concurrently and returned in grid order.  Throws std::domain_error
// for invalid epsilon or non-positive grid entries; per-row regime errors
// and non-finite values become absent cells.
std::vector<TimesRow> times_table(const std::vector<double>& omega_grid,
                                  double epsilon);

}  // namespace lz
