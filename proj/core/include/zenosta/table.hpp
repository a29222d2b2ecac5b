#pragma once

#include <string>
#include <vector>

namespace zenosta {

/// Homogeneous numeric result rows with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Shortest round-trip decimal formatting of a double.
std::string format_double(double v);

void export_csv(const Table& table, const std::string& path);
void export_json(const Table& table, const std::string& path);
void export_table(const Table& table, const std::string& path,
                  const std::string& format);

}  // namespace zenosta
