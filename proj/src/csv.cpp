#include "qclock/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "qclock/errors.hpp"

namespace qclock {

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw ValidationError("unknown output format '" + name +
                        "' (expected csv or json)");
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string format_count(double v) {
  if (std::isinf(v) && v > 0.0) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
  return buf;
}

namespace {

// RFC-4180 style quoting, applied only when the cell needs it. Numeric cells
// never do; error diagnostics may carry commas.
void put_csv_cell(std::ostream& os, const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) {
    os << cell;
    return;
  }
  os << '"';
  for (char ch : cell) {
    if (ch == '"') os << '"';
    os << ch;
  }
  os << '"';
}

void put_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    put_csv_cell(os, cells[i]);
  }
  os << '\n';
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& [key, value] : table.metadata)
    os << "# " << key << '=' << value << '\n';
  put_csv_row(os, table.columns);
  for (const auto& row : table.rows) put_csv_row(os, row);
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json j;
  auto& meta = j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  j["columns"] = table.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  os << j.dump(2) << '\n';
}

std::string table_to_string(const Table& table, TableFormat format) {
  std::ostringstream os;
  if (format == TableFormat::csv)
    write_csv(table, os);
  else
    write_json(table, os);
  return os.str();
}

void write_table(const Table& table, TableFormat format,
                 const std::string& out_path) {
  if (out_path.empty()) {
    if (format == TableFormat::csv)
      write_csv(table, std::cout);
    else
      write_json(table, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw ValidationError("cannot open output path: " + out_path);
  if (format == TableFormat::csv)
    write_csv(table, file);
  else
    write_json(table, file);
  file.flush();
  if (!file) throw ValidationError("failed writing output path: " + out_path);
}

}  // namespace qclock
