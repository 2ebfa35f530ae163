#include "lz/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "lz/constants.hpp"
#include "lz/errors.hpp"
#include "lz/ode.hpp"
#include "lz/special.hpp"

namespace lz {

namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string("IntegratorConfig: ") + what);
  }
}

// Degree-5 Taylor polynomial of w = 2*P_d - 1 about the crossing.  The
// third-order equation for w fixes all coefficients beyond the third from
// the crossing-point data (w, w', w'', w''') alone, and w''' is itself known
// in closed form, so the polynomial is exact through tau^5.
struct OriginQuintic {
  double c0, c1, c2, c3, c4, c5;

  static OriginQuintic build(const LzParams& prm) {
    const double w = prm.omega;
    const double w2 = w * w;
    const double a = pi * w2;
    const double e_half = std::exp(-0.5 * a);          // exp(-pi w^2 / 2)
    const double s = std::sqrt(-std::expm1(-a));       // sqrt(1 - exp(-pi w^2))
    const double chi = chi_exact(w).value;
    const double cs = std::cos(chi);
    const double sn = std::sin(chi);

    OriginQuintic q{};
    q.c0 = -e_half;
    q.c1 = 2.0 * w * s * cs;
    q.c2 = 2.0 * w2 * e_half;
    q.c3 = (2.0 / 3.0) * w * s * (sn - 2.0 * w2 * cs);
    q.c4 = -w2 * q.c2 / 3.0;
    q.c5 = -(w2 * q.c3) / 5.0 - q.c1 / 10.0;
    return q;
  }

  double w(double t) const {
    return c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
  }
  double w1(double t) const {
    return c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)));
  }
  double w2d(double t) const {
    return 2.0 * c2 + t * (6.0 * c3 + t * (12.0 * c4 + t * 20.0 * c5));
  }

  double probability(double t) const { return 0.5 * (w(t) + 1.0); }
};

double clamp_probability(double p, double abs_tol) {
  if (p < 0.0 && p > -10.0 * abs_tol) {
    return 0.0;
  }
  return p;
}

std::int64_t grid_count(double tau_max, double step) {
  return static_cast<std::int64_t>(std::floor(tau_max / step + 1e-9));
}

ode::StepControl step_control(const IntegratorConfig& cfg) {
  return ode::StepControl{cfg.rel_tol, cfg.abs_tol, cfg.max_step, 2'000'000};
}

}  // namespace

void validate_config(const IntegratorConfig& cfg) {
  require(std::isfinite(cfg.rel_tol) && cfg.rel_tol > 0.0 && cfg.rel_tol <= 1e-2,
          "rel_tol must lie in (0, 1e-2]");
  require(std::isfinite(cfg.abs_tol) && cfg.abs_tol > 0.0 && cfg.abs_tol <= 1e-2,
          "abs_tol must lie in (0, 1e-2]");
  require(std::isfinite(cfg.max_step) && cfg.max_step >= 0.0,
          "max_step must be >= 0");
  require(std::isfinite(cfg.origin_offset) && cfg.origin_offset > 0.0 &&
              cfg.origin_offset <= 0.5,
          "origin_offset must lie in (0, 0.5]");
  require(std::isfinite(cfg.tau_max) && cfg.tau_max > 0.0,
          "tau_max must be > 0");
  require(std::isfinite(cfg.sample_step) && cfg.sample_step > 0.0,
          "sample_step must be > 0");
  require(std::isfinite(cfg.theta_guard) && cfg.theta_guard > 0.0 &&
              cfg.theta_guard <= 0.3,
          "theta_guard must lie in (0, 0.3]");
}

ProbabilityTrace integrate_diabatic_inversion(const LzParams& params,
                                              const IntegratorConfig& cfg,
                                              Direction direction) {
  validate_config(cfg);
  const double step = cfg.sample_step;
  const std::int64_t count = grid_count(cfg.tau_max, step);
  const double sgn = (direction == Direction::forward) ? 1.0 : -1.0;
  const auto quintic = OriginQuintic::build(params);

  std::vector<double> taus(static_cast<std::size_t>(count) + 1);
  std::vector<double> ps(taus.size());
  std::vector<double> ode_taus;
  std::vector<std::size_t> ode_slots;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    taus[k] = sgn * (static_cast<double>(k) * step);
    if (std::abs(taus[k]) < cfg.origin_offset) {
      ps[k] = quintic.probability(taus[k]);
    } else {
      ode_taus.push_back(taus[k]);
      ode_slots.push_back(k);
    }
  }

  if (!ode_taus.empty()) {
    const double om2 = params.omega * params.omega;
    const auto rhs = [om2](double tau, const ode::State<3>& y,
                           ode::State<3>& d) {
      d[0] = y[1];
      d[1] = y[2];
      d[2] = (y[2] - 4.0 * tau * (om2 + tau * tau) * y[1] + 4.0 * om2 * y[0]) /
             tau;
    };
    const double t0 = sgn * cfg.origin_offset;
    ode::State<3> y{quintic.w(t0), quintic.w1(t0), quintic.w2d(t0)};
    ode::integrate<3>(rhs, t0, taus.back(), y, step_control(cfg), ode_taus,
                      [&](std::size_t i, double, const ode::State<3>& ys) {
                        ps[ode_slots[i]] = 0.5 * (ys[0] + 1.0);
                      });
  }

  ProbabilityTrace trace{Basis::diabatic, TraceSource::inversion_ode,
                         params.omega, {}};
  trace.samples.reserve(taus.size());
  if (direction == Direction::forward) {
    for (std::size_t k = 0; k < taus.size(); ++k) {
      trace.samples.push_back({taus[k], clamp_probability(ps[k], cfg.abs_tol)});
    }
  } else {
    for (std::size_t k = taus.size(); k-- > 0;) {
      trace.samples.push_back({taus[k], clamp_probability(ps[k], cfg.abs_tol)});
    }
  }
  return trace;
}

ProbabilityTrace integrate_adiabatic_inversion(const LzParams& params,
                                               const IntegratorConfig& cfg,
                                               Direction direction) {
  validate_config(cfg);
  const double step = cfg.sample_step;
  const std::int64_t count = grid_count(cfg.tau_max, step);
  const double sgn = (direction == Direction::forward) ? 1.0 : -1.0;

  std::vector<double> taus(static_cast<std::size_t>(count) + 1);
  std::vector<double> thetas(taus.size());
  for (std::size_t k = 0; k < taus.size(); ++k) {
    taus[k] = sgn * (static_cast<double>(k) * step);
    thetas[k] = mixing_angle(params, taus[k]);
  }

  const double margin = (direction == Direction::forward)
                            ? thetas.back()
                            : half_pi - thetas.back();
  if (margin < cfg.theta_guard) {
    const double reach = params.omega / std::tan(2.0 * cfg.theta_guard);
    throw IntegrationError(
        "integrate_adiabatic_inversion: horizon tau_max = " +
            std::to_string(cfg.tau_max) +
            " drives the mixing angle into the guard band; the largest "
            "reachable |tau| at this omega and theta_guard is about " +
            std::to_string(reach),
        taus.back());
  }

  const double w = params.omega;
  const double w2 = w * w;
  const double a = pi * w2;
  const double e_half = std::exp(-0.5 * a);
  const double s = std::sqrt(-std::expm1(-a));
  const double chi = chi_exact(w).value;
  const double sn = std::sin(chi);
  const double cs = std::cos(chi);

  // crossing-point data for W = 2*P_a - 1 as a function of theta
  ode::State<3> y{-s * sn, -2.0 * e_half, 4.0 * s * (sn - 2.0 * w2 * cs)};

  const double om4 = w2 * w2;
  const auto rhs = [om4](double theta, const ode::State<3>& yv,
                         ode::State<3>& d) {
    const double sin2 = std::sin(2.0 * theta);
    const double cot2 = std::cos(2.0 * theta) / sin2;
    const double s2 = sin2 * sin2;
    const double s6 = s2 * s2 * s2;
    d[0] = yv[1];
    d[1] = yv[2];
    d[2] = -6.0 * cot2 * yv[2] - 4.0 * (4.0 * om4 / s6 + 1.0) * yv[1] -
           24.0 * cot2 * yv[0];
  };

  std::vector<double> ps(taus.size());
  ode::integrate<3>(rhs, thetas.front(), thetas.back(), y, step_control(cfg),
                    thetas,
                    [&](std::size_t i, double, const ode::State<3>& ys) {
                      ps[i] = 0.5 * (ys[0] + 1.0);
                    });

  ProbabilityTrace trace{Basis::adiabatic, TraceSource::inversion_ode,
                         params.omega, {}};
  trace.samples.reserve(taus.size());
  if (direction == Direction::forward) {
    for (std::size_t k = 0; k < taus.size(); ++k) {
      trace.samples.push_back({taus[k], clamp_probability(ps[k], cfg.abs_tol)});
    }
  } else {
    for (std::size_t k = taus.size(); k-- > 0;) {
      trace.samples.push_back({taus[k], clamp_probability(ps[k], cfg.abs_tol)});
    }
  }
  return trace;
}

std::vector<AmplitudeSample> schrodinger_amplitudes(const LzParams& params,
                                                    double tau_initial,
                                                    const IntegratorConfig& cfg,
                                                    OracleStart start) {
  validate_config(cfg);
  if (!(std::isfinite(tau_initial) && tau_initial < -1.0)) {
    throw std::invalid_argument(
        "schrodinger_amplitudes: tau_initial must be finite and < -1 (well "
        "before the crossing)");
  }

  const double step = cfg.sample_step;
  const std::int64_t k_hi = grid_count(cfg.tau_max, step);
  const double lo = std::max(tau_initial, -cfg.tau_max);
  const auto k_lo = static_cast<std::int64_t>(std::ceil(lo / step - 1e-9));

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    grid.push_back(static_cast<double>(k) * step);
  }

  ode::State<4> y{};  // (Re c1, Im c1, Re c2, Im c2)
  if (start == OracleStart::diabatic_state) {
    y = {1.0, 0.0, 0.0, 0.0};
  } else {
    const double th = mixing_angle(params, tau_initial);
    y = {std::sin(th), 0.0, std::cos(th), 0.0};
  }

  const double w = params.omega;
  const auto rhs = [w](double tau, const ode::State<4>& yv, ode::State<4>& d) {
    d[0] = -tau * yv[1] + w * yv[3];
    d[1] = tau * yv[0] - w * yv[2];
    d[2] = w * yv[1] + tau * yv[3];
    d[3] = -w * yv[0] - tau * yv[2];
  };

  std::vector<AmplitudeSample> out(grid.size());
  ode::integrate<4>(rhs, tau_initial, static_cast<double>(k_hi) * step, y,
                    step_control(cfg), grid,
                    [&](std::size_t i, double t, const ode::State<4>& ys) {
                      out[i] = {t, {ys[0], ys[1]}, {ys[2], ys[3]}};
                    });
  return out;
}

ProbabilityTrace integrate_schrodinger_oracle(const LzParams& params,
                                              double tau_initial,
                                              const IntegratorConfig& cfg) {
  const auto amps = schrodinger_amplitudes(params, tau_initial, cfg,
                                           OracleStart::diabatic_state);
  ProbabilityTrace trace{Basis::diabatic, TraceSource::schrodinger_oracle,
                         params.omega, {}};
  trace.samples.reserve(amps.size());
  for (const auto& a : amps) {
    trace.samples.push_back(
        {a.tau, clamp_probability(std::norm(a.c2), cfg.abs_tol)});
  }
  return trace;
}

ProbabilityTrace inversion_trace(const LzParams& params,
                                 const IntegratorConfig& cfg, Basis basis,
                                 double tau_lo, double tau_hi) {
  if (!(std::isfinite(tau_lo) && std::isfinite(tau_hi) && tau_lo <= tau_hi)) {
    throw std::invalid_argument(
        "inversion_trace: need finite tau_lo <= tau_hi");
  }
  const auto run = [&](Direction d, double horizon) {
    IntegratorConfig c = cfg;
    c.tau_max = horizon;
    return (basis == Basis::diabatic)
               ? integrate_diabatic_inversion(params, c, d)
               : integrate_adiabatic_inversion(params, c, d);
  };
  const double slack = 1e-9 * std::max({1.0, std::abs(tau_lo), std::abs(tau_hi)});

  ProbabilityTrace trace{basis, TraceSource::inversion_ode, params.omega, {}};
  if (tau_lo < 0.0) {
    const auto back = run(Direction::backward, -tau_lo);
    for (const auto& sm : back.samples) {
      if (sm.tau >= tau_lo - slack && sm.tau < 0.0 &&
          sm.tau <= tau_hi + slack) {
        trace.samples.push_back(sm);
      }
    }
  }
  if (tau_hi >= 0.0) {
    // the forward evolution contributes tau = 0 whenever the interval
    // contains it
    const double horizon = std::max(tau_hi, cfg.sample_step);
    const auto fwd = run(Direction::forward, horizon);
    for (const auto& sm : fwd.samples) {
      if (sm.tau >= tau_lo - slack && sm.tau <= tau_hi + slack) {
        trace.samples.push_back(sm);
      }
    }
  }
  return trace;
}

}  // namespace lz
