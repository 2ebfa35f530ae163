#pragma once

#include <string>
#include <vector>

namespace lz {

// Everything a run of the command-line front end needs, with defaults.  The
// same structure backs config files and flags; flags are applied after the
// file, so they win.
struct RunSpec {
  std::vector<double> omega;  // explicit coupling list; wins over the range
  double omega_min = 0.0;
  double omega_max = 0.0;
  long points = 0;
  bool log_grid = true;
  std::string basis = "both";  // d | a | both (long spellings accepted)
  double epsilon = 0.1;
  double tau_min = -10.0;
  double tau_max = 40.0;
  double tau_step = 0.01;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::string format = "csv";  // csv | json
  std::string out;             // output file or directory ("" = stdout)
  double slack = 1.0;          // tolerance multiplier for validation runs
};

// Applies one key=value assignment to the spec.  `context` prefixes error
// messages (e.g. "file.cfg:7").  Throws std::invalid_argument on an unknown
// key or an unparsable value.
void apply_config_entry(RunSpec& spec, const std::string& key,
                        const std::string& value, const std::string& context);

// Loads `key = value` lines over `base`.  '#' starts a comment; blank lines
// are skipped.  Errors carry "path:line:" prefixes.  Throws
// std::runtime_error if the file cannot be opened, std::invalid_argument on
// malformed content.
RunSpec load_config_file(const std::string& path, const RunSpec& base = {});

// The coupling grid a spec denotes: the explicit list if nonempty, otherwise
// `points` values from omega_min to omega_max (log- or linearly spaced),
// otherwise empty.
std::vector<double> resolve_omega_grid(const RunSpec& spec);

// Checks ranges and enumerations (basis, format, epsilon, tau ordering,
// tolerances, slack; the resolved grid must be nonempty and positive when
// `need_omega`).  Throws std::invalid_argument on the first violation.
void validate_run_spec(const RunSpec& spec, bool need_omega);

}  // namespace lz
