#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"

#include "lz/config.hpp"
#include "lz/engine.hpp"
#include "lz/figures.hpp"
#include "lz/model.hpp"
#include "lz/report.hpp"
#include "lz/validate.hpp"

namespace {

namespace fs = std::filesystem;

std::string self_path(const char* argv0) {
  std::error_code ec;
  const auto p = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    return p.string();
  }
  return argv0 != nullptr ? argv0 : "";
}

std::vector<lz::Basis> bases_of(const std::string& basis) {
  if (basis == "d" || basis == "diabatic") {
    return {lz::Basis::diabatic};
  }
  if (basis == "a" || basis == "adiabatic") {
    return {lz::Basis::adiabatic};
  }
  return {lz::Basis::diabatic, lz::Basis::adiabatic};
}

void write_table_stream(std::ostream& os, const lz::Table& table,
                        const std::string& format) {
  if (format == "csv") {
    lz::write_csv(os, table);
  } else {
    lz::write_jsonl(os, table);
  }
}

void write_table_file(const fs::path& path, const lz::Table& table,
                      const std::string& format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot open output file '" + path.string() +
                             "'");
  }
  write_table_stream(os, table, format);
  if (!os) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

lz::IntegratorConfig engine_config(const lz::RunSpec& spec) {
  lz::IntegratorConfig cfg;
  cfg.rel_tol = spec.rel_tol;
  cfg.abs_tol = spec.abs_tol;
  cfg.sample_step = spec.tau_step;
  return cfg;
}

int cmd_trace(const lz::RunSpec& spec) {
  lz::validate_run_spec(spec, true);
  const auto grid = lz::resolve_omega_grid(spec);
  const auto bases = bases_of(spec.basis);
  const std::string ext = spec.format == "csv" ? ".csv" : ".jsonl";
  const auto cfg = engine_config(spec);

  if (grid.size() * bases.size() == 1) {
    const lz::LzParams prm(grid.front());
    const auto table =
        lz::build_trace_table(prm, cfg, bases.front(), spec.tau_min,
                              spec.tau_max,
                              bases.front() == lz::Basis::adiabatic);
    if (spec.out.empty()) {
      write_table_stream(std::cout, table, spec.format);
    } else {
      write_table_file(spec.out, table, spec.format);
    }
    return 0;
  }

  if (spec.out.empty()) {
    throw std::invalid_argument(
        "multiple traces requested: --out must name a directory");
  }
  fs::create_directories(spec.out);
  for (const double w : grid) {
    const lz::LzParams prm(w);
    for (const auto b : bases) {
      const auto table = lz::build_trace_table(
          prm, cfg, b, spec.tau_min, spec.tau_max, b == lz::Basis::adiabatic);
      const std::string name =
          "trace_w" + lz::format_number(w) +
          (b == lz::Basis::diabatic ? "_diabatic" : "_adiabatic") + ext;
      write_table_file(fs::path(spec.out) / name, table, spec.format);
    }
  }
  return 0;
}

int cmd_times(lz::RunSpec spec) {
  if (lz::resolve_omega_grid(spec).empty()) {
    // default to the standard coupling sweep
    spec.omega_min = 0.03;
    spec.omega_max = 10.0;
    spec.points = 61;
    spec.log_grid = true;
  }
  lz::validate_run_spec(spec, true);
  const auto table =
      lz::build_times_table(lz::resolve_omega_grid(spec), spec.epsilon);
  if (spec.out.empty()) {
    write_table_stream(std::cout, table, spec.format);
  } else {
    write_table_file(spec.out, table, spec.format);
  }
  return 0;
}

int cmd_figures(const lz::RunSpec& spec) {
  lz::validate_run_spec(spec, false);
  const std::string dir = spec.out.empty() ? "figures" : spec.out;
  const auto paths = lz::write_figures(dir, spec.epsilon, spec.format);
  for (const auto& p : paths) {
    std::cout << p << '\n';
  }
  return 0;
}

int cmd_validate(const lz::RunSpec& spec, const std::string& cli) {
  lz::validate_run_spec(spec, false);
  const auto report = lz::run_acceptance_checks(spec.slack, cli);
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    std::printf("[%s] %02d %s: %s\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str());
    passed += c.pass ? 1 : 0;
  }
  std::printf("validation: %zu/%zu passed\n", passed, report.checks.size());
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  lz::RunSpec spec;

  // apply any --config file before binding flags, so flags win
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc) {
        spec = lz::load_config_file(argv[i + 1], spec);
      } else if (arg.rfind("--config=", 0) == 0) {
        spec = lz::load_config_file(arg.substr(9), spec);
      }
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }

  CLI::App app{
      "transition-probability evolutions and characteristic times of the "
      "scaled two-level crossing model"};
  app.require_subcommand(1);
  std::string config_path;

  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "key = value configuration file, applied before flags");
    cmd->add_option("--format", spec.format,
                    "output format: csv or json (JSON Lines)");
    cmd->add_option("--out", spec.out, "output file or directory");
  };
  const auto add_omega = [&](CLI::App* cmd) {
    cmd->add_option("--omega", spec.omega,
                    "explicit coupling value(s), comma separated or repeated")
        ->delimiter(',');
    cmd->add_option("--omega-min", spec.omega_min, "range: smallest coupling");
    cmd->add_option("--omega-max", spec.omega_max, "range: largest coupling");
    cmd->add_option("--points", spec.points,
                    "range: number of grid points (log spaced)");
  };

  auto* trace_cmd = app.add_subcommand(
      "trace", "sample a probability evolution on a uniform tau grid");
  add_omega(trace_cmd);
  trace_cmd->add_option("--basis", spec.basis, "d, a, or both");
  trace_cmd->add_option("--tau-min", spec.tau_min, "start of the tau window");
  trace_cmd->add_option("--tau-max", spec.tau_max, "end of the tau window");
  trace_cmd->add_option("--tau-step", spec.tau_step, "grid spacing");
  trace_cmd->add_option("--rel-tol", spec.rel_tol,
                        "integrator relative tolerance");
  trace_cmd->add_option("--abs-tol", spec.abs_tol,
                        "integrator absolute tolerance");
  add_output(trace_cmd);

  auto* times_cmd = app.add_subcommand(
      "times", "closed-form transition-time table over a coupling grid");
  add_omega(times_cmd);
  times_cmd->add_option("--epsilon", spec.epsilon,
                        "oscillation floor as a fraction of P(inf)");
  add_output(times_cmd);

  auto* figures_cmd = app.add_subcommand(
      "figures", "render the standard figure-data bundle into a directory");
  figures_cmd->add_option("--epsilon", spec.epsilon,
                          "threshold used by the times table");
  add_output(figures_cmd);

  auto* validate_cmd = app.add_subcommand(
      "validate", "run the end-to-end validation suite");
  validate_cmd->add_option("--slack", spec.slack,
                           "multiplier (>= 1) applied to all tolerances");
  validate_cmd->add_option("--config", config_path,
                           "key = value configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(trace_cmd)) {
      return cmd_trace(spec);
    }
    if (app.got_subcommand(times_cmd)) {
      return cmd_times(spec);
    }
    if (app.got_subcommand(figures_cmd)) {
      return cmd_figures(spec);
    }
    return cmd_validate(spec, self_path(argv[0]));
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
