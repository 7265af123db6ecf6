#pragma once

#include <string>
#include <vector>

#include "oraclust/metric.hpp"

namespace oraclust {

enum class Objective { kMeans, kCenter, kMedian };
std::string to_string(Objective o);

struct ExactSolution {
  std::vector<PointId> centers;  // ascending ids
  double cost = 0.0;
};

// Exhaustive discrete solver: enumerates every k-subset of the points in
// lexicographic order (first strictly better subset wins, so ties keep the
// lexicographically smallest center set). Budget-guarded to n <= 16, k <= 4.
ExactSolution exact_solve(const TrueMetric& metric, std::size_t k, Objective objective);

}  // namespace oraclust
