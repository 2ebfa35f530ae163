#include "lz/times.hpp"

#include <cmath>
#include <stdexcept>

#include "lz/constants.hpp"
#include "lz/errors.hpp"
#include "lz/special.hpp"
#include "lz/sweep.hpp"

namespace lz {

namespace {

void validate_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::domain_error("threshold epsilon must lie in (0, 1)");
  }
}

// ((e^A - c) / d)^{1/3} evaluated in log space so that A ~ pi*omega^2 can
// exceed the overflow limit of e^A.  Requires e^A > c.
double cbrt_shifted_exp(double numer_exponent, double c, double d) {
  const double log_numer =
      c == 0.0 ? numer_exponent
               : numer_exponent + std::log1p(-c * std::exp(-numer_exponent));
  return std::exp((log_numer - std::log(d)) / 3.0);
}

std::optional<double> finite_or_absent(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return std::nullopt;
}

}  // namespace

double jump_time_diabatic(const LzParams& params) {
  const double w = params.omega;
  const double s = std::sqrt(-std::expm1(-pi * w * w));
  return s / (w * std::cos(chi_exact(w).value));
}

std::optional<double> relax_time_diabatic(const LzParams& params, double epsilon) {
  validate_epsilon(epsilon);
  const double w = params.omega;
  // expm1 overflows to +inf for large omega, driving the argument to -1:
  // the oscillations then never reach the floor and the time is absent.
  const double grow = std::expm1(pi * w * w);
  const double arg = 1.0 / (epsilon * epsilon * grow) - 1.0;
  if (arg < 0.0) {
    return std::nullopt;
  }
  return w * std::sqrt(arg);
}

double jump_time_adiabatic_small(const LzParams& params) {
  const double w = params.omega;
  return 2.0 * w * std::exp(-0.5 * pi * w * w);
}

TransitionTimes jump_time_adiabatic_large(const LzParams& params, double epsilon) {
  validate_epsilon(epsilon);
  const double w = params.omega;
  const double w2 = w * w;
  const double a = pi * w2;
  const double d = 16.0 * epsilon * w2 * w2;

  const double root_initial = std::exp((a - std::log(d)) / 3.0);
  if (root_initial <= 1.0) {
    throw RegimeError(
        "jump_time_adiabatic_large: initial-time root argument is not positive "
        "(coupling too small for the large-coupling construction)");
  }
  if (a <= ln2) {
    throw RegimeError(
        "jump_time_adiabatic_large: final-time root argument is not positive "
        "(coupling too small for the large-coupling construction)");
  }
  const double root_final = cbrt_shifted_exp(a, 2.0, d);
  if (root_final <= 1.0) {
    throw RegimeError(
        "jump_time_adiabatic_large: final-time root argument is not positive "
        "(coupling too small for the large-coupling construction)");
  }

  const double jump_initial = -w * std::sqrt(root_initial - 1.0);
  const double jump_final = w * std::sqrt(root_final - 1.0);
  return {Basis::adiabatic, epsilon,        jump_final - jump_initial,
          jump_initial,     jump_final,     std::nullopt};
}

double relax_time_adiabatic(const LzParams& params, double epsilon) {
  validate_epsilon(epsilon);
  const double w = params.omega;
  const double w2 = w * w;
  const double root =
      cbrt_shifted_exp(pi * w2, 1.0, 4.0 * epsilon * epsilon * w2 * w2);
  if (root <= 1.0) {
    throw RegimeError(
        "relax_time_adiabatic: root argument is not positive for this "
        "coupling/threshold combination");
  }
  return w * std::sqrt(root - 1.0);
}

std::vector<TimesRow> times_table(const std::vector<double>& omega_grid,
                                  double epsilon) {
  validate_epsilon(epsilon);
  for (double w : omega_grid) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw std::domain_error("times_table: grid entries must be finite and > 0");
    }
  }

  return ordered_parallel_map(omega_grid, [epsilon](double w) {
    const LzParams prm(w);
    TimesRow row;
    row.omega = w;
    row.jump_d = finite_or_absent(jump_time_diabatic(prm));
    row.relax_d = relax_time_diabatic(prm, epsilon);

    if (w <= 1.0) {
      row.jump_a_small = finite_or_absent(jump_time_adiabatic_small(prm));
    }
    if (w >= 0.5) {
      try {
        const TransitionTimes tt = jump_time_adiabatic_large(prm, epsilon);
        row.jump_a_initial = finite_or_absent(tt.jump_initial.value());
        row.jump_a_final = finite_or_absent(tt.jump_final.value());
        row.jump_a_large = finite_or_absent(tt.jump.value());
      } catch (const RegimeError&) {
        // leave the large-coupling cells absent for this row
      }
    }
    try {
      row.relax_a = finite_or_absent(relax_time_adiabatic(prm, epsilon));
    } catch (const RegimeError&) {
    }

    // Recommended adiabatic jump: the small-coupling branch below 0.75, the
    // large-coupling branch from 0.75 up, falling back to whichever exists.
    if (w < 0.75) {
      row.jump_a = row.jump_a_small ? row.jump_a_small : row.jump_a_large;
    } else {
      row.jump_a = row.jump_a_large ? row.jump_a_large : row.jump_a_small;
    }
    return row;
  });
}

}  // namespace lz
