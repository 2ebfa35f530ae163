#pragma once

#include <string>
#include <vector>

#include "lz/engine.hpp"
#include "lz/report.hpp"

namespace lz {

// One rendered output file, still in memory.
struct FigureFile {
  std::string name;
  std::string content;
};

// Samples the engine and the closed-form evolution side by side on the trace
// grid of `cfg` restricted to [tau_lo, tau_hi].  Columns: tau, optionally
// tau_over_omega (the natural abscissa for adiabatic evolutions), p_engine,
// p_approx, envelope_upper, envelope_lower, nonoscillatory, valid_flag.
Table build_trace_table(const LzParams& params, const IntegratorConfig& cfg,
                        Basis basis, double tau_lo, double tau_hi,
                        bool tau_over_omega_column);

// The transition-time table on a coupling grid as a renderable Table
// (columns: omega, jump_d, relax_d, jump_a_small, jump_a_initial,
// jump_a_final, jump_a_large, jump_a, relax_a).
Table build_times_table(const std::vector<double>& omega_grid, double epsilon);

// The standard figure-data bundle, fully rendered in memory and byte-stable
// for fixed inputs: per-coupling evolution traces in both bases across the
// small-to-large coupling range, a fine-grained adiabatic detail trace, and
// the transition-time table over a log-spaced coupling grid.  `format` is
// "csv" or "json" (JSON Lines files).
std::vector<FigureFile> render_figure_bundle(double epsilon,
                                             const std::string& format);

// Renders the bundle into `directory` (created if needed) and returns the
// written paths in bundle order.
std::vector<std::string> write_figures(const std::string& directory,
                                       double epsilon,
                                       const std::string& format);

}  // namespace lz
