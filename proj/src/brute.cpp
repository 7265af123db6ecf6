#include "oraclust/brute.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace oraclust {

std::string to_string(Objective o) {
  switch (o) {
    case Objective::kMeans: return "kmeans";
    case Objective::kCenter: return "kcenter";
    case Objective::kMedian: return "kmedian";
  }
  return "unknown";
}

ExactSolution exact_solve(const TrueMetric& metric, std::size_t k, Objective objective) {
  const std::size_t n = metric.size();
  if (k == 0 || k > n) throw std::invalid_argument("k out of range");
  if (n > 16 || k > 4) throw std::invalid_argument("exact_solve limited to n <= 16, k <= 4");

  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = metric.distance(static_cast<PointId>(i), static_cast<PointId>(j));

  std::vector<std::size_t> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  ExactSolution best;
  best.cost = std::numeric_limits<double>::infinity();
  for (;;) {
    double cost = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c : comb) nearest = std::min(nearest, d[x][c]);
      switch (objective) {
        case Objective::kMeans: cost += nearest * nearest; break;
        case Objective::kMedian: cost += nearest; break;
        case Objective::kCenter: cost = std::max(cost, nearest); break;
      }
    }
    // strict improvement keeps the lexicographically smallest optimum
    if (cost < best.cost) {
      best.cost = cost;
      best.centers.assign(comb.begin(), comb.end());
    }
    // next k-combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && comb[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

}  // namespace oraclust
