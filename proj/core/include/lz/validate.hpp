#pragma once

#include <string>
#include <vector>

namespace lz {

struct CheckResult {
  int id;            // 1-based check number, stable across releases
  std::string name;  // short kebab-case label
  bool pass;
  std::string detail;  // measured values and the bound they were held to
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) {
        return false;
      }
    }
    return !checks.empty();
  }
};

// Runs the end-to-end validation suite: closed-form limits, engine-vs-oracle
// agreement, measured-vs-formula times, expansion residuals and output
// determinism.  All numeric tolerances are multiplied by `tolerance_scale`
// (>= 1 loosens them; pass/fail answers that are exact set decisions are
// unaffected).  When `cli_path` is nonempty, the determinism check also
// executes that binary's `figures` command and byte-compares its output
// against the in-memory rendering.  A nonempty `only` restricts the run to
// the listed check ids.
ValidationReport run_acceptance_checks(double tolerance_scale = 1.0,
                                       const std::string& cli_path = "",
                                       const std::vector<int>& only = {});

}  // namespace lz
