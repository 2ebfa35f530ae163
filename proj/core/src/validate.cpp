#include "lz/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include <unistd.h>

#include "lz/approx.hpp"
#include "lz/constants.hpp"
#include "lz/engine.hpp"
#include "lz/figures.hpp"
#include "lz/measure.hpp"
#include "lz/model.hpp"
#include "lz/special.hpp"
#include "lz/times.hpp"

namespace lz {

namespace {

namespace fs = std::filesystem;

std::string num(double v) { return format_number(v); }

struct BoundTracker {
  double worst = 0.0;
  bool ok = true;

  void hold(double value, double bound) {
    worst = std::max(worst, value);
    ok = ok && (value <= bound);
  }
};

// Matches samples of two traces that share a grid (same spacing, possibly
// different extents) and reports the largest pointwise difference over
// [tau_lo, tau_hi].
double max_shared_diff(const ProbabilityTrace& a, const ProbabilityTrace& b,
                       double tau_lo, double tau_hi) {
  double worst = 0.0;
  std::size_t j = 0;
  for (const auto& sa : a.samples) {
    if (sa.tau < tau_lo - 1e-9 || sa.tau > tau_hi + 1e-9) {
      continue;
    }
    while (j < b.samples.size() && b.samples[j].tau < sa.tau - 5e-10) {
      ++j;
    }
    if (j == b.samples.size()) {
      break;
    }
    if (std::abs(b.samples[j].tau - sa.tau) <= 5e-10) {
      worst = std::max(worst, std::abs(sa.p - b.samples[j].p));
    }
  }
  return worst;
}

CheckResult check_probability_sum(double scale) {
  const double bound = 1e-14 * scale;
  BoundTracker t;
  for (int i = 0; i < 50; ++i) {
    const double w =
        0.05 * std::pow(5.0 / 0.05, static_cast<double>(i) / 49.0);
    const LzParams prm(w);
    const double sum =
        p_infinity(prm, Basis::diabatic) + p_infinity(prm, Basis::adiabatic);
    t.hold(std::abs(sum - 1.0), bound);
  }
  return {1, "probability-sum-identity", t.ok,
          "max |P_d(inf)+P_a(inf)-1| = " + num(t.worst) + " over 50 couplings "
          "in [0.05, 5] (bound " + num(bound) + ")"};
}

CheckResult check_jump_small(double scale) {
  const double bound = 0.01 * scale;
  const double jump = jump_time_diabatic(LzParams(0.03));
  const double target = std::sqrt(2.0 * pi);
  const double dev = std::abs(jump / target - 1.0);
  return {2, "jump-small-coupling-limit", dev <= bound,
          "jump_time_diabatic(0.03) = " + num(jump) + ", sqrt(2 pi) = " +
              num(target) + ", relative deviation " + num(dev) + " (bound " +
              num(bound) + ")"};
}

CheckResult check_jump_large(double scale) {
  const double bound = 0.01 * scale;
  BoundTracker t;
  std::ostringstream detail;
  detail << "jump/2w =";
  for (const double w : {5.0, 10.0}) {
    const double ratio = jump_time_diabatic(LzParams(w)) / (2.0 * w);
    detail << ' ' << num(ratio) << " (w=" << num(w) << ')';
    t.hold(std::abs(ratio - 1.0), bound);
  }
  detail << ", bound 1 +- " << num(bound);
  return {3, "jump-large-coupling-scaling", t.ok, detail.str()};
}

CheckResult check_relax_threshold(double) {
  // set membership, not a tolerance: the formula's square root is real up to
  // exactly sqrt(ln(1/eps^2 + 1)/pi)
  const double eps = 0.1;
  const double threshold = std::sqrt(std::log(1.0 / (eps * eps) + 1.0) / pi);
  const bool below_present =
      relax_time_diabatic(LzParams(threshold * (1.0 - 1e-4)), eps).has_value();
  const bool above_absent =
      !relax_time_diabatic(LzParams(threshold * (1.0 + 1e-4)), eps).has_value();
  const bool far_present = relax_time_diabatic(LzParams(1.0), eps).has_value();
  const bool far_absent = !relax_time_diabatic(LzParams(1.3), eps).has_value();
  const bool ok = below_present && above_absent && far_present && far_absent;
  return {4, "relaxation-threshold", ok,
          "eps = 0.1 cutoff at w = " + num(threshold) +
              ": present just below = " + (below_present ? "yes" : "NO") +
              ", absent just above = " + (above_absent ? "yes" : "NO") +
              ", present at 1.0 = " + (far_present ? "yes" : "NO") +
              ", absent at 1.3 = " + (far_absent ? "yes" : "NO")};
}

CheckResult check_engine_anchors(double scale) {
  const double origin_bound = 1e-12 * scale;
  BoundTracker origin;
  for (const double w : {0.5, 1.0, 2.0}) {
    const LzParams prm(w);
    IntegratorConfig cfg;
    cfg.tau_max = 1.0;
    const auto trace =
        integrate_diabatic_inversion(prm, cfg, Direction::forward);
    const double p0 = boundary_values(prm, Basis::diabatic).p0;
    origin.hold(std::abs(trace.samples.front().p - p0), origin_bound);
  }

  const LzParams prm(1.0);
  IntegratorConfig cfg;
  cfg.tau_max = 40.0;
  const auto trace = integrate_diabatic_inversion(prm, cfg, Direction::forward);
  const double p_inf = p_infinity(prm, Basis::diabatic);
  const auto est = pd_approx(prm, 40.0);
  const double tail_bound =
      (std::abs(est.nonoscillatory - p_inf) +
       (est.envelope_upper - est.nonoscillatory)) *
      scale;
  const double tail_dev = std::abs(trace.samples.back().p - p_inf);

  const bool ok = origin.ok && (tail_dev <= tail_bound);
  return {5, "engine-exact-anchors", ok,
          "max |P(0) - exact| = " + num(origin.worst) + " (bound " +
              num(origin_bound) + "); |P(40) - P(inf)| = " + num(tail_dev) +
              " at w = 1 (drift+envelope bound " + num(tail_bound) + ")"};
}

CheckResult check_oracle_equivalence(double scale) {
  const double tau_initial = -300.0;
  BoundTracker t;
  std::ostringstream detail;
  double bound = 0.0;
  for (const double w : {0.3, 0.5, 1.0}) {
    const LzParams prm(w);
    IntegratorConfig cfg;
    cfg.sample_step = 0.05;
    cfg.tau_max = 30.0;
    bound = 2.0 / std::sqrt(tau_initial * tau_initial + w * w) * scale;
    const auto oracle = integrate_schrodinger_oracle(prm, tau_initial, cfg);
    const auto inv = inversion_trace(prm, cfg, Basis::diabatic, -10.0, 30.0);
    const double worst = max_shared_diff(inv, oracle, -10.0, 30.0);
    detail << "w=" << num(w) << ": max|dP| = " << num(worst) << "; ";
    t.hold(worst, bound);
  }
  detail << "bound " << num(bound) << " from the start-time spurious "
         << "amplitude 2/|tau_i|";
  return {6, "oracle-equivalence", t.ok, detail.str()};
}

CheckResult check_cross_basis(double scale) {
  const double bound = 1e-4 * scale;
  const double tau_initial = -300.0;
  BoundTracker t;
  std::ostringstream detail;
  for (const double w : {0.3, 1.0, 2.0}) {
    const LzParams prm(w);
    IntegratorConfig cfg;
    cfg.sample_step = 0.05;
    cfg.tau_max = 30.0;
    cfg.rel_tol = 1e-11;  // keeps the oracle norm well inside the rotation
    cfg.abs_tol = 1e-13;  // precondition over the long integration
    const auto amps = schrodinger_amplitudes(prm, tau_initial, cfg,
                                             OracleStart::adiabatic_state);
    ProbabilityTrace rotated{Basis::adiabatic, TraceSource::schrodinger_oracle,
                             w, {}};
    for (const auto& a : amps) {
      const auto ad = rotate_to_adiabatic({a.c1, a.c2},
                                          mixing_angle(prm, a.tau));
      rotated.samples.push_back({a.tau, std::norm(ad[0])});
    }
    const auto inv = inversion_trace(prm, cfg, Basis::adiabatic, -10.0, 30.0);
    const double worst = max_shared_diff(inv, rotated, -10.0, 30.0);
    detail << "w=" << num(w) << ": max|dP| = " << num(worst) << "; ";
    t.hold(worst, bound);
  }
  detail << "bound " << num(bound);
  return {7, "cross-basis-consistency", t.ok, detail.str()};
}

CheckResult check_chi_residuals(double scale) {
  BoundTracker t;
  double worst_small = 0.0;
  double worst_large = 0.0;
  for (const double w : {0.05, 0.1, 0.2, 0.3}) {
    const double bound = 10.0 * std::pow(w, 10.0) * scale;
    const double dev = std::abs(chi_series(w).value - chi_exact(w).value);
    worst_small = std::max(worst_small, dev / (10.0 * std::pow(w, 10.0)));
    t.hold(dev, bound);
  }
  for (const double w : {3.0, 4.0, 5.0, 10.0}) {
    const double bound = 10.0 * std::pow(w, -10.0) * scale;
    const double dev = std::abs(chi_series(w).value - chi_exact(w).value);
    worst_large = std::max(worst_large, dev / (10.0 * std::pow(w, -10.0)));
    t.hold(dev, bound);
  }
  return {8, "phase-expansion-residuals", t.ok,
          "residual / (10 w^10) <= " + num(worst_small) +
              " for w <= 0.3; residual / (10 w^-10) <= " + num(worst_large) +
              " for w >= 3 (bound 1 at scale 1)"};
}

CheckResult check_measured_relaxation(double scale) {
  const double bound = 0.15 * scale;
  const double eps = 0.1;
  const LzParams prm(0.5);
  IntegratorConfig cfg;
  cfg.tau_max = 10.0;
  const auto trace = integrate_diabatic_inversion(prm, cfg, Direction::forward);
  const auto measured =
      measure_times_numeric(trace, p_infinity(prm, Basis::diabatic), eps);
  const double formula = relax_time_diabatic(prm, eps).value();
  if (!measured.relax) {
    return {9, "measured-vs-closed-form-relaxation", false,
            "no relaxation time measurable on the trace (formula " +
                num(formula) + ")"};
  }
  const double dev = std::abs(*measured.relax / formula - 1.0);
  return {9, "measured-vs-closed-form-relaxation", dev <= bound,
          "measured " + num(*measured.relax) + " vs formula " + num(formula) +
              ", relative deviation " + num(dev) + " (bound " + num(bound) +
              ")"};
}

CheckResult check_decay_exponent(double scale) {
  const double bound = 0.15 * scale;
  const LzParams prm(2.0);
  IntegratorConfig cfg;
  cfg.tau_max = 30.0;
  const auto trace =
      integrate_adiabatic_inversion(prm, cfg, Direction::forward);
  std::vector<double> taus;
  std::vector<double> amps;
  for (const auto& st : peak_stats(trace)) {
    if (st.tau >= 3.0 && st.tau <= 30.0 && st.amplitude > 0.0) {
      taus.push_back(st.tau);
      amps.push_back(st.amplitude);
    }
  }
  if (taus.size() < 8) {
    return {10, "adiabatic-decay-exponent", false,
            "only " + std::to_string(taus.size()) +
                " usable oscillation peaks in [3, 30]"};
  }
  const double slope = fit_loglog_slope(taus, amps);
  const double dev = std::abs(slope + 3.0);
  return {10, "adiabatic-decay-exponent", dev <= bound,
          "log-log amplitude slope " + num(slope) + " from " +
              std::to_string(taus.size()) + " peaks (target -3 +- " +
              num(bound) + ")"};
}

CheckResult check_jump_relax_ratio(double scale) {
  const double bound = 0.10 * scale;
  const double eps = 0.1;
  const double target = std::pow(16.0 * eps, 1.0 / 6.0);
  BoundTracker t;
  std::ostringstream detail;
  for (const double w : {3.0, 4.0}) {
    const LzParams prm(w);
    const double jump = jump_time_adiabatic_large(prm, eps).jump.value();
    const double relax = relax_time_adiabatic(prm, eps);
    const double ratio = jump / relax;
    detail << "w=" << num(w) << ": ratio = " << num(ratio) << "; ";
    t.hold(std::abs(ratio / target - 1.0), bound);
  }
  detail << "target (16 eps)^(1/6) = " << num(target) << " +- " << num(bound);
  return {11, "jump-relax-ratio", t.ok, detail.str()};
}

bool same_file_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) {
    return false;
  }
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

CheckResult check_figure_determinism(double, const std::string& cli_path) {
  const auto first = render_figure_bundle(0.1, "csv");
  const auto second = render_figure_bundle(0.1, "csv");
  if (first.size() != second.size()) {
    return {12, "figure-reproduction-determinism", false,
            "bundle size changed between renderings"};
  }
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].name != second[i].name ||
        first[i].content != second[i].content) {
      return {12, "figure-reproduction-determinism", false,
              "in-memory rendering not reproducible: " + first[i].name};
    }
  }
  std::size_t expected = 0;
  for (const auto& f : first) {
    expected += f.content.size();
  }
  std::string detail = std::to_string(first.size()) +
                       " files rendered identically twice (" +
                       std::to_string(expected) + " bytes)";

  if (cli_path.empty()) {
    return {12, "figure-reproduction-determinism", true,
            detail + "; no CLI binary supplied, exec comparison skipped"};
  }

  const auto base = fs::temp_directory_path() /
                    ("lz-figures-" + std::to_string(::getpid()));
  const fs::path dir1 = base.string() + "-1";
  const fs::path dir2 = base.string() + "-2";
  bool ok = true;
  std::string why;
  for (const auto& dir : {dir1, dir2}) {
    const std::string cmd = "\"" + cli_path + "\" figures --out \"" +
                            dir.string() + "\" >/dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) {
      ok = false;
      why = "CLI figures run failed";
      break;
    }
  }
  if (ok) {
    for (const auto& f : first) {
      if (!fs::exists(dir1 / f.name)) {
        ok = false;
        why = "CLI output missing " + f.name;
        break;
      }
      if (!same_file_bytes(dir1 / f.name, dir2 / f.name)) {
        ok = false;
        why = "CLI output differs between runs: " + f.name;
        break;
      }
      std::ifstream in(dir1 / f.name, std::ios::binary);
      std::ostringstream got;
      got << in.rdbuf();
      if (got.str() != f.content) {
        ok = false;
        why = "CLI output differs from library rendering: " + f.name;
        break;
      }
    }
  }
  std::error_code ec;
  fs::remove_all(dir1, ec);
  fs::remove_all(dir2, ec);
  if (!ok) {
    return {12, "figure-reproduction-determinism", false, why};
  }
  return {12, "figure-reproduction-determinism", true,
          detail + "; CLI rerun and library rendering byte-identical"};
}

}  // namespace

ValidationReport run_acceptance_checks(double tolerance_scale,
                                       const std::string& cli_path,
                                       const std::vector<int>& only) {
  const double scale = std::max(tolerance_scale, 1.0);
  const std::vector<std::pair<int, std::function<CheckResult()>>> registry = {
      {1, [&] { return check_probability_sum(scale); }},
      {2, [&] { return check_jump_small(scale); }},
      {3, [&] { return check_jump_large(scale); }},
      {4, [&] { return check_relax_threshold(scale); }},
      {5, [&] { return check_engine_anchors(scale); }},
      {6, [&] { return check_oracle_equivalence(scale); }},
      {7, [&] { return check_cross_basis(scale); }},
      {8, [&] { return check_chi_residuals(scale); }},
      {9, [&] { return check_measured_relaxation(scale); }},
      {10, [&] { return check_decay_exponent(scale); }},
      {11, [&] { return check_jump_relax_ratio(scale); }},
      {12, [&] { return check_figure_determinism(scale, cli_path); }},
  };

  ValidationReport report;
  for (const auto& [id, fn] : registry) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    try {
      report.checks.push_back(fn());
    } catch (const std::exception& ex) {
      report.checks.push_back(
          {id, "check-" + std::to_string(id), false,
           std::string("unexpected exception: ") + ex.what()});
    }
  }
  return report;
}

}  // namespace lz
