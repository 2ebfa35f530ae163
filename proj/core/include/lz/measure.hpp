#pragma once

#include <vector>

#include "lz/engine.hpp"
#include "lz/times.hpp"

namespace lz {

// A locally refined extremum of a sampled evolution: the three samples around
// a discrete-slope sign change are fitted with a parabola, so tau and value
// are accurate well beyond the grid spacing.
struct Extremum {
  double tau;
  double value;
};

// An extremum together with the local oscillation decomposition estimated
// from its neighbours: midline (nonoscillatory level) and half peak-to-peak
// amplitude.
struct PeakStat {
  double tau;
  double value;
  double midline;
  double amplitude;
};

// All interior extrema of the trace at tau > 0, in increasing tau order.
// Requires at least three samples.
std::vector<Extremum> detect_extrema(const ProbabilityTrace& trace);

// Extrema with local midline/amplitude estimates.  Each extremum needs both
// neighbours, so the first and last detected extrema carry no stats and the
// result has two fewer entries than detect_extrema.
std::vector<PeakStat> peak_stats(const ProbabilityTrace& trace);

// Least-squares slope of log(y) against log(x).  Throws std::invalid_argument
// on size mismatch, fewer than two points, or non-positive entries.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

// Estimates the jump and relaxation times directly from a sampled evolution:
// the jump time from the tangent line at the sample nearest tau = 0
// (jump = p_inf / slope), the relaxation time as the last refined extremum
// whose local amplitude still reaches epsilon * p_inf.
//
// Absent fields mean the quantity does not exist on this trace (non-positive
// crossing slope; oscillations that never reach the floor).  Throws
// HorizonError when the trace ends before the question is decidable (too few
// oscillations resolved, or the final amplitude still above the floor),
// std::domain_error for epsilon outside (0, 1), std::invalid_argument for a
// non-positive p_inf or a trace with fewer than three samples.
TransitionTimes measure_times_numeric(const ProbabilityTrace& trace,
                                      double p_inf, double epsilon);

}  // namespace lz
