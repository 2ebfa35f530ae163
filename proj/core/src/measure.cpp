#include "lz/measure.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "lz/errors.hpp"

namespace lz {

std::vector<Extremum> detect_extrema(const ProbabilityTrace& trace) {
  const auto& s = trace.samples;
  if (s.size() < 3) {
    throw std::invalid_argument("detect_extrema: need at least three samples");
  }
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i].tau <= 0.0) {
      continue;
    }
    const double dl = s[i].p - s[i - 1].p;
    const double dr = s[i + 1].p - s[i].p;
    if (!(dl * dr < 0.0)) {
      continue;
    }
    // parabola through the three bracketing samples
    const double denom = s[i - 1].p - 2.0 * s[i].p + s[i + 1].p;
    const double diff = s[i - 1].p - s[i + 1].p;
    const double delta = 0.5 * diff / denom;
    const double h = 0.5 * (s[i + 1].tau - s[i - 1].tau);
    out.push_back({s[i].tau + delta * h, s[i].p - 0.25 * diff * delta});
  }
  return out;
}

std::vector<PeakStat> peak_stats(const ProbabilityTrace& trace) {
  const auto ext = detect_extrema(trace);
  std::vector<PeakStat> out;
  if (ext.size() < 3) {
    return out;
  }
  out.reserve(ext.size() - 2);
  for (std::size_t k = 1; k + 1 < ext.size(); ++k) {
    // successive extrema alternate between the two envelope branches, so the
    // average of a peak with its neighbours' mean splits level from swing
    const double midline =
        0.25 * (2.0 * ext[k].value + ext[k - 1].value + ext[k + 1].value);
    const double amplitude =
        0.25 * std::abs(2.0 * ext[k].value - ext[k - 1].value -
                        ext[k + 1].value);
    out.push_back({ext[k].tau, ext[k].value, midline, amplitude});
  }
  return out;
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("fit_loglog_slope: size mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need at least two points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument(
          "fit_loglog_slope: entries must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TransitionTimes measure_times_numeric(const ProbabilityTrace& trace,
                                      double p_inf, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error(
        "measure_times_numeric: epsilon must lie in (0, 1)");
  }
  if (!(std::isfinite(p_inf) && p_inf > 0.0)) {
    throw std::invalid_argument(
        "measure_times_numeric: p_inf must be finite and > 0");
  }
  const auto& s = trace.samples;
  if (s.size() < 3) {
    throw std::invalid_argument(
        "measure_times_numeric: need at least three samples");
  }

  TransitionTimes result{trace.basis, epsilon, {}, {}, {}, {}};

  // tangent-line jump: slope at the sample nearest the crossing
  std::size_t j = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs(s[i].tau) < std::abs(s[j].tau)) {
      j = i;
    }
  }
  double slope;
  if (j > 0 && j + 1 < s.size()) {
    slope = (s[j + 1].p - s[j - 1].p) / (s[j + 1].tau - s[j - 1].tau);
  } else if (j == 0) {
    const double h = s[1].tau - s[0].tau;
    slope = (-3.0 * s[0].p + 4.0 * s[1].p - s[2].p) / (2.0 * h);
  } else {
    const double h = s[j].tau - s[j - 1].tau;
    slope = (3.0 * s[j].p - 4.0 * s[j - 1].p + s[j - 2].p) / (2.0 * h);
  }
  if (slope > 0.0) {
    result.jump = p_inf / slope;
  }

  // relaxation: last refined extremum whose local amplitude reaches the floor
  const double floor = epsilon * p_inf;
  const auto stats = peak_stats(trace);
  if (stats.empty()) {
    const double settle = std::abs(s.back().p - p_inf);
    if (settle <= floor) {
      return result;  // already settled, no resolvable oscillation: absent
    }
    throw HorizonError(
        "measure_times_numeric: trace ends before enough oscillations are "
        "resolved to decide the relaxation time");
  }
  if (stats.back().amplitude >= floor) {
    throw HorizonError(
        "measure_times_numeric: oscillation amplitude still at or above the "
        "floor at the end of the trace; extend the horizon");
  }
  for (std::size_t k = stats.size(); k-- > 0;) {
    if (stats[k].amplitude >= floor) {
      result.relax = stats[k].tau;
      break;
    }
  }
  return result;
}

}  // namespace lz
