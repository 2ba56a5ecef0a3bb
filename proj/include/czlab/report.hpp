#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "czlab/grid.hpp"

namespace czlab {

using Value = std::variant<std::int64_t, std::uint64_t, double, std::string>;

// Column-named table of report rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
  double number(std::size_t row, const std::string& name) const;
  void add(std::vector<Value> row);
};

// 17 significant digits, shortest exact round trip not attempted.
std::string format_number(double v);
std::string format_value(const Value& v);

// RFC-4180 body (CRLF line ends, quoting where needed) after '#' comment lines.
void write_csv(std::ostream& os, const Table& t, const std::vector<std::string>& comments = {});
void write_tsv(std::ostream& os, const Table& t);
nlohmann::json table_to_json(const Table& t);

std::string grid_label(const GridSpec& g);

}  // namespace czlab
