#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qclock {

// Tabular result with an ordered "# key=value" metadata block. Cells are
// preformatted strings so integer axes ("3"), machine counts ("inf") and
// error diagnostics survive the round trip unchanged.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

enum class TableFormat { csv, json };

TableFormat parse_table_format(const std::string& name);

// Scientific notation with 17 significant digits ("%.16e"): enough to
// round-trip any double exactly. Infinities and NaNs print as inf / nan.
std::string format_full(double v);

// Integer-valued doubles (d, M) without exponent noise; "inf" for the
// infinite machine count.
std::string format_count(double v);

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

std::string table_to_string(const Table& table, TableFormat format);

// Writes to out_path, or to stdout when out_path is empty. Throws
// ValidationError when the path cannot be opened or written.
void write_table(const Table& table, TableFormat format,
                 const std::string& out_path);

}  // namespace qclock
