#pragma once

#include <string>
#include <vector>

namespace oraclust {

// Loaded CSV file: header names plus string cells, no type coercion.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if missing
  bool has_column(const std::string& name) const;
};
CsvTable load_csv_table(const std::string& path);

// Self-contained SVG scatter/line chart of y against distinct strong queries
// (log10 x, values clamped to >= 1): one polyline per delta group (a lone
// point degenerates to a marker), horizontal reference rules for the strong
// and weak baseline costs when those columns are present. Output depends only
// on the table contents.
std::string emit_plot(const CsvTable& table, const std::string& y_column);

}  // namespace oraclust
