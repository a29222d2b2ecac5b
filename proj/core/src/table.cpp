#include "zenosta/table.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "zenosta/errors.hpp"

namespace zenosta {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw IoError("row width does not match column count");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  // Shortest round-trip digits; plain decimal for moderate magnitudes so
  // spreadsheet-facing CSV reads naturally (0.0002, not 2e-04).
  char buf[64];
  const double a = std::abs(v);
  const auto res = (v != 0.0 && a >= 1e-4 && a < 1e15)
                       ? std::to_chars(buf, buf + sizeof(buf), v,
                                       std::chars_format::fixed)
                       : std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

// RFC-4180: quote fields containing comma, quote, or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  return out;
}

}  // namespace

void export_csv(const Table& table, const std::string& path) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

void export_json(const Table& table, const std::string& path) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = row[i];
    records.push_back(std::move(rec));
  }
  auto out = open_out(path);
  out << records.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

void export_table(const Table& table, const std::string& path,
                  const std::string& format) {
  if (format == "csv")
    export_csv(table, path);
  else if (format == "json")
    export_json(table, path);
  else
    throw ConfigInvalid("unknown export format '" + format + "'");
}

}  // namespace zenosta
