#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lz {

// The single sentinel used for absent values in text output.  Never emitted
// as an empty field: a cell is either a finite number or this token.
inline constexpr const char* absent_token = "NA";

// A rectangular numeric result set with a schema tag and key/value metadata,
// renderable as CSV or JSON Lines with identical content.
struct Table {
  std::string schema;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

// Shortest round-trippable-ish fixed formatting (printf %.12g): 12
// significant digits, no locale dependence, identical bytes across runs.
std::string format_number(double v);

// CSV layout: one '#'-prefixed metadata line (schema first, then the meta
// pairs), a header row, then data rows.  Absent or non-finite values render
// as the absent token.
void write_csv(std::ostream& os, const Table& table);

// JSON Lines layout: exactly one object per data row, keys in column order,
// absent or non-finite values rendered as null.  Schema and metadata are a
// documentation concern (see README), not part of the stream.
void write_jsonl(std::ostream& os, const Table& table);

std::string to_csv(const Table& table);
std::string to_jsonl(const Table& table);

}  // namespace lz
