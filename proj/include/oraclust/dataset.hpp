#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oraclust {

using PointId = std::uint32_t;

// Point set with optional integer cluster labels. Coordinates are row-major.
struct Dataset {
  std::vector<double> coords;  // n * dim
  std::size_t n = 0;
  std::size_t dim = 0;
  std::optional<std::vector<int>> labels;  // size n when present

  const double* point(PointId i) const { return coords.data() + std::size_t{i} * dim; }

  double distance(PointId a, PointId b) const;  // Euclidean
};

// CSV schema: header "label,dim=<d>", then one row per point
// "label,x_1,...,x_d" where label may be empty. Throws std::runtime_error
// with the offending line number on malformed input.
Dataset load_points_csv(const std::string& path);
void save_points_csv(const Dataset& data, const std::string& path);

}  // namespace oraclust
