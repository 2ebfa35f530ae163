#include "lz/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lz {

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw std::invalid_argument(context.empty() ? what : context + ": " + what);
}

double parse_double(const std::string& text, const std::string& context) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    fail(context, "not a number: '" + text + "'");
  }
  return v;
}

long parse_long(const std::string& text, const std::string& context) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    fail(context, "not an integer: '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text,
                               const std::string& context) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    // trim surrounding blanks
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) {
      fail(context, "empty entry in list: '" + text + "'");
    }
    out.push_back(parse_double(item.substr(a, b - a + 1), context));
  }
  if (out.empty()) {
    fail(context, "empty list");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) {
    return "";
  }
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_entry(RunSpec& spec, const std::string& key,
                        const std::string& value, const std::string& context) {
  if (key == "omega") {
    spec.omega = parse_list(value, context);
  } else if (key == "omega_min") {
    spec.omega_min = parse_double(value, context);
  } else if (key == "omega_max") {
    spec.omega_max = parse_double(value, context);
  } else if (key == "points") {
    spec.points = parse_long(value, context);
  } else if (key == "grid") {
    if (value == "log") {
      spec.log_grid = true;
    } else if (value == "linear") {
      spec.log_grid = false;
    } else {
      fail(context, "grid must be 'log' or 'linear', got '" + value + "'");
    }
  } else if (key == "basis") {
    spec.basis = value;
  } else if (key == "epsilon") {
    spec.epsilon = parse_double(value, context);
  } else if (key == "tau_min") {
    spec.tau_min = parse_double(value, context);
  } else if (key == "tau_max") {
    spec.tau_max = parse_double(value, context);
  } else if (key == "tau_step") {
    spec.tau_step = parse_double(value, context);
  } else if (key == "rel_tol") {
    spec.rel_tol = parse_double(value, context);
  } else if (key == "abs_tol") {
    spec.abs_tol = parse_double(value, context);
  } else if (key == "format") {
    spec.format = value;
  } else if (key == "out") {
    spec.out = value;
  } else if (key == "slack") {
    spec.slack = parse_double(value, context);
  } else {
    fail(context, "unknown key '" + key + "'");
  }
}

RunSpec load_config_file(const std::string& path, const RunSpec& base) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  RunSpec spec = base;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const std::string context = path + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(context, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      fail(context, "missing key before '='");
    }
    apply_config_entry(spec, key, value, context);
  }
  return spec;
}

std::vector<double> resolve_omega_grid(const RunSpec& spec) {
  if (!spec.omega.empty()) {
    return spec.omega;
  }
  if (spec.points <= 0) {
    return {};
  }
  if (spec.points == 1) {
    return {spec.omega_min};
  }
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const auto n = static_cast<double>(spec.points - 1);
  if (spec.log_grid) {
    const double ratio = spec.omega_max / spec.omega_min;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid[i] = spec.omega_min * std::pow(ratio, static_cast<double>(i) / n);
    }
  } else {
    const double span = spec.omega_max - spec.omega_min;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid[i] = spec.omega_min + span * static_cast<double>(i) / n;
    }
  }
  grid.back() = spec.omega_max;
  return grid;
}

void validate_run_spec(const RunSpec& spec, bool need_omega) {
  if (spec.basis != "d" && spec.basis != "a" && spec.basis != "both" &&
      spec.basis != "diabatic" && spec.basis != "adiabatic") {
    throw std::invalid_argument("basis must be one of d, a, both");
  }
  if (spec.format != "csv" && spec.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(spec.tau_step > 0.0) || !std::isfinite(spec.tau_step)) {
    throw std::invalid_argument("tau_step must be > 0");
  }
  if (!(spec.tau_min <= spec.tau_max)) {
    throw std::invalid_argument("tau_min must not exceed tau_max");
  }
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be > 0");
  }
  if (!(spec.slack >= 1.0)) {
    throw std::invalid_argument("slack must be >= 1");
  }
  if (need_omega) {
    const auto grid = resolve_omega_grid(spec);
    if (grid.empty()) {
      throw std::invalid_argument(
          "no coupling values: give --omega or --omega-min/--omega-max/--points");
    }
    for (const double w : grid) {
      if (!(std::isfinite(w) && w > 0.0)) {
        throw std::invalid_argument("coupling values must be finite and > 0");
      }
    }
  }
}

}  // namespace lz
