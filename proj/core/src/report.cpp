#include "lz/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lz {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

void check_shape(const Table& table) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument(
          "Table: row width does not match the column list");
    }
  }
}

std::string cell_text(const std::optional<double>& cell) {
  if (cell && std::isfinite(*cell)) {
    return format_number(*cell);
  }
  return absent_token;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  check_shape(table);
  os << "# schema=" << table.schema;
  for (const auto& [key, value] : table.meta) {
    os << ' ' << key << '=' << value;
  }
  os << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) {
      os << ',';
    }
    os << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        os << ',';
      }
      os << cell_text(row[c]);
    }
    os << '\n';
  }
}

void write_jsonl(std::ostream& os, const Table& table) {
  check_shape(table);
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] && std::isfinite(*row[c])) {
        obj[table.columns[c]] = *row[c];
      } else {
        obj[table.columns[c]] = nullptr;
      }
    }
    os << obj.dump() << '\n';
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

std::string to_jsonl(const Table& table) {
  std::ostringstream os;
  write_jsonl(os, table);
  return os.str();
}

}  // namespace lz
