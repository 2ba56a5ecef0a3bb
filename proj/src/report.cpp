#include "czlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "czlab/error.hpp"

namespace czlab {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name) return k;
  throw InvalidArgument("no column named " + name);
}

double Table::number(std::size_t row, const std::string& name) const {
  const Value& v = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return static_cast<double>(*u);
  throw InvalidArgument("column " + name + " is not numeric");
}

void Table::add(std::vector<Value> row) {
  if (row.size() != columns.size()) throw InvalidArgument("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return std::to_string(*u);
  return std::get<std::string>(v);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const Table& t, const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << "\r\n";
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_field(t.columns[k]);
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(format_value(row[k]));
    os << "\r\n";
  }
}

void write_tsv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "\t" : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "\t" : "") << format_value(row[k]);
    os << '\n';
  }
}

nlohmann::json table_to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json o = nlohmann::json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v))
                o[t.columns[k]] = v;
              else
                o[t.columns[k]] = format_number(v);
            } else {
              o[t.columns[k]] = v;
            }
          },
          row[k]);
    }
    rows.push_back(std::move(o));
  }
  return rows;
}

std::string grid_label(const GridSpec& g) {
  return "d" + std::to_string(g.d) + "L" + std::to_string(g.L) + "m" + std::to_string(g.m);
}

}  // namespace czlab
