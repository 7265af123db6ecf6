#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oraclust/estimator.hpp"

namespace oraclust {

struct KMeansWSParams {
  std::size_t k = 1;
  double epsilon = 0.5;           // in (0,1); only enters the iteration-count formula
  double c_iter = 2e-8;           // scales t; default gives t ~ 20*k*log2(n) at epsilon=0.5
  EstimatorParams estimator;      // c_ball, log base
  std::optional<std::size_t> t_override;     // exact number of sampling rounds
  std::optional<std::size_t> init_count;     // defaults to ball_size
  std::uint64_t seed = 0;
  std::uint64_t strong_budget = 0;           // raw strong-query cap; 0 = unlimited

  // max(k, round(c_iter * (4320*29160/eps^3) * k * log(n))) unless overridden
  std::size_t rounds_for(std::size_t n) const;
};

// Candidate centers with integer weights (one unit per original point) and the
// exact candidate-to-candidate distances already paid for during sampling.
struct WeightedInstance {
  std::vector<PointId> candidates;       // multiset, append order
  std::vector<std::uint64_t> weights;    // sum equals n
  std::vector<std::vector<double>> pairwise;  // pairwise[i][j], j <= i
};

struct KMeansWSResult {
  std::vector<PointId> candidates;      // the bi-criteria center multiset
  std::vector<std::uint32_t> assignment;  // per point, candidate entry index
  double true_cost = 0.0;   // sum of squared true distances to the nearest candidate
  double est_cost = 0.0;    // sum of squared set-estimates under the assignment
  bool aborted = false;     // strong budget breached; partial result
  std::uint64_t strong_raw = 0, strong_distinct = 0, weak_raw = 0, weak_distinct = 0;
};

// Oversampling loop: seeds ball_size-many centers, then t rounds of sampling
// one point proportional to the squared set-estimate and promoting it to a
// center, then one weighted assignment pass over all points. The metric is
// touched only through the two oracles except for the true-cost evaluation,
// which is explicitly unmetered.
std::pair<WeightedInstance, KMeansWSResult> kmeans_weak_strong(
    const TrueMetric& metric, StrongOracle& strong, WeakOracle& weak,
    const KMeansWSParams& params);

// Weighted k-means++ seeding followed by single-swap local search (stops when
// no swap improves the weighted cost by more than 1e-9 relative, or after 50
// passes). Centers are drawn from the candidates; no oracle queries.
struct WeightedSolveResult {
  std::vector<std::uint32_t> center_entries;  // indices into instance.candidates
  std::vector<PointId> centers;
  double weighted_cost = 0.0;
};
WeightedSolveResult solve_weighted(const WeightedInstance& instance, std::size_t k,
                                   std::uint64_t seed);

// D^2-sampling (first center uniform) for `rounds` rounds against any oracle;
// with a strong oracle this is the exact-distance baseline. Issues exactly
// n * rounds queries.
struct BaselineResult {
  std::vector<PointId> centers;
  double true_cost = 0.0;  // evaluation-only
};
BaselineResult dsq_sampling_baseline(const TrueMetric& metric, DistanceOracle& oracle,
                                     std::size_t rounds, std::uint64_t seed);

inline BaselineResult kmeans_strong_baseline(const TrueMetric& metric, StrongOracle& strong,
                                             std::size_t k, std::uint64_t seed,
                                             std::optional<std::size_t> oversample_t = {}) {
  return dsq_sampling_baseline(metric, strong, oversample_t.value_or(k), seed);
}

// True k-means cost of a center set (nearest-center, squared distances).
// Evaluation only: goes straight to the metric, never through an oracle.
double evaluate_cost(const TrueMetric& metric, const std::vector<PointId>& centers);

}  // namespace oraclust
