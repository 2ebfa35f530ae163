#include "lz/figures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "lz/approx.hpp"
#include "lz/sweep.hpp"
#include "lz/times.hpp"

namespace lz {

Table build_trace_table(const LzParams& params, const IntegratorConfig& cfg,
                        Basis basis, double tau_lo, double tau_hi,
                        bool tau_over_omega_column) {
  const auto trace = inversion_trace(params, cfg, basis, tau_lo, tau_hi);

  Table t;
  t.schema = "trace";
  t.meta = {{"omega", format_number(params.omega)},
            {"basis", basis == Basis::diabatic ? "diabatic" : "adiabatic"},
            {"tau_step", format_number(cfg.sample_step)}};
  t.columns = {"tau"};
  if (tau_over_omega_column) {
    t.columns.push_back("tau_over_omega");
  }
  t.columns.insert(t.columns.end(),
                   {"p_engine", "p_approx", "envelope_upper", "envelope_lower",
                    "nonoscillatory", "valid_flag"});

  t.rows.reserve(trace.samples.size());
  for (const auto& sm : trace.samples) {
    const EvolutionEstimate est = (basis == Basis::diabatic)
                                      ? pd_approx(params, sm.tau)
                                      : pa_approx(params, sm.tau);
    std::vector<std::optional<double>> row;
    row.reserve(t.columns.size());
    row.emplace_back(sm.tau);
    if (tau_over_omega_column) {
      row.emplace_back(sm.tau / params.omega);
    }
    row.emplace_back(sm.p);
    row.emplace_back(est.p);
    row.emplace_back(est.envelope_upper);
    row.emplace_back(est.envelope_lower);
    row.emplace_back(est.nonoscillatory);
    row.emplace_back(est.valid ? 1.0 : 0.0);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table build_times_table(const std::vector<double>& omega_grid,
                        double epsilon) {
  const auto rows = times_table(omega_grid, epsilon);
  Table t;
  t.schema = "times";
  t.meta = {{"epsilon", format_number(epsilon)}};
  t.columns = {"omega",        "jump_d",         "relax_d",
               "jump_a_small", "jump_a_initial", "jump_a_final",
               "jump_a_large", "jump_a",         "relax_a"};
  t.rows.reserve(rows.size());
  for (const auto& r : rows) {
    t.rows.push_back({r.omega, r.jump_d, r.relax_d, r.jump_a_small,
                      r.jump_a_initial, r.jump_a_final, r.jump_a_large,
                      r.jump_a, r.relax_a});
  }
  return t;
}

namespace {

struct FigureJob {
  double omega;
  Basis basis;
  bool detail;
};

}  // namespace

std::vector<FigureFile> render_figure_bundle(double epsilon,
                                             const std::string& format) {
  if (format != "csv" && format != "json") {
    throw std::invalid_argument(
        "render_figure_bundle: format must be csv or json");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error(
        "render_figure_bundle: epsilon must lie in (0, 1)");
  }
  const bool csv = (format == "csv");
  const std::string ext = csv ? ".csv" : ".jsonl";

  std::vector<FigureJob> jobs;
  for (const double w : {0.03, 0.1, 0.3, 1.0, 3.0, 10.0}) {
    jobs.push_back({w, Basis::diabatic, false});
    jobs.push_back({w, Basis::adiabatic, false});
  }
  jobs.push_back({2.0, Basis::adiabatic, true});

  auto files = ordered_parallel_map(jobs, [&](const FigureJob& job) {
    const LzParams prm(job.omega);
    IntegratorConfig cfg;
    cfg.sample_step = job.detail ? 0.005 : 0.02;
    const double lo = job.detail ? 0.0 : -10.0;
    const double hi = job.detail ? 30.0 : 40.0;
    const Table t = build_trace_table(prm, cfg, job.basis, lo, hi,
                                      job.basis == Basis::adiabatic);
    const std::string name =
        "trace_w" + format_number(job.omega) +
        (job.basis == Basis::diabatic ? "_diabatic" : "_adiabatic") +
        (job.detail ? "_detail" : "") + ext;
    return FigureFile{name, csv ? to_csv(t) : to_jsonl(t)};
  });

  std::vector<double> grid(61);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] =
        0.03 * std::pow(10.0 / 0.03, static_cast<double>(i) / 60.0);
  }
  grid.back() = 10.0;
  const Table tt = build_times_table(grid, epsilon);
  files.push_back({"times" + ext, csv ? to_csv(tt) : to_jsonl(tt)});
  return files;
}

std::vector<std::string> write_figures(const std::string& directory,
                                       double epsilon,
                                       const std::string& format) {
  const auto files = render_figure_bundle(epsilon, format);
  std::filesystem::create_directories(directory);
  std::vector<std::string> paths;
  paths.reserve(files.size());
  for (const auto& f : files) {
    const auto path = std::filesystem::path(directory) / f.name;
    std::ofstream os(path, std::ios::binary);
    if (!os) {
      throw std::runtime_error("cannot open output file '" + path.string() +
                               "'");
    }
    os << f.content;
    if (!os) {
      throw std::runtime_error("failed writing '" + path.string() + "'");
    }
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace lz
