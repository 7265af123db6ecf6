#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oraclust {

// Flat result rows for the two algorithm families. Doubles are printed with
// 17 significant digits so emitted rows parse back to equal values.

struct KMeansRow {
  std::string algo;
  std::uint64_t n = 0, k = 0;
  double delta = 0.0, eps = 0.0, c_ball = 0.0, c_iter = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t strong_distinct = 0, weak_distinct = 0;
  double true_cost = 0.0, est_cost = 0.0, approx_factor = 0.0;
  bool aborted = false;

  static std::string csv_header();
  std::string csv_row() const;
  static KMeansRow from_csv(const std::string& line);
};

struct KCenterRow {
  std::string algo;
  std::uint64_t n = 0, k = 0;
  double delta = 0.0, eps = 0.0, c_sample = 0.0, c_ball = 0.0;
  std::uint64_t seed = 0;
  std::string search_mode;  // "binary" | "linear" | "-"
  double found_rad = 0.0;
  std::uint64_t strong_distinct = 0, weak_distinct = 0;
  double true_radius = 0.0, approx_factor = 0.0;
  std::string status;

  static std::string csv_header();
  std::string csv_row() const;
  static KCenterRow from_csv(const std::string& line);
};

// Shared CSV plumbing.
std::string format_double(double v);
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace oraclust
