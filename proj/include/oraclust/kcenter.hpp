#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oraclust/estimator.hpp"

namespace oraclust {

enum class CarveStatus {
  kCompleted,
  kAbortTooManyCenters,
  kAbortSparseBall,
  kAbortSmallsetInfeasible,
};
std::string to_string(CarveStatus s);

struct KCenterWSParams {
  std::size_t k = 1;
  double epsilon = 0.1;    // radius grid ratio (1+epsilon)
  double c_sample = 0.05;  // scales the per-iteration sample against 180*k*log(n)
  EstimatorParams estimator;  // c_ball scales the companion-ball size, log base
  std::uint64_t seed = 0;
  bool binary_search = true;

  std::size_t sample_size_for(std::size_t n) const;      // max(k+1, round(c_sample*180*k*log n))
  std::size_t ball_threshold_for(std::size_t n) const;   // the estimator ball size
};

struct CarvedCenter {
  PointId center = 0;
  std::vector<PointId> companions;  // exactly ball_threshold members (empty on the strong path)
};

struct CarveOutcome {
  CarveStatus status = CarveStatus::kCompleted;
  std::vector<CarvedCenter> centers;
  // per point: index into centers, or kUnassigned when the carve aborted early
  std::vector<std::uint32_t> assignment;
  static constexpr std::uint32_t kUnassigned = 0xffffffffu;
};

// One ball-carving pass at a fixed trial radius: repeatedly sample
// sample_size points from the live set, strong-query all pairs in the sample,
// take the densest 2*rad ball center (smallest id on ties), keep the
// ball_threshold closest sampled companions, and peel every live point whose
// companion-median estimate is at most 4*rad. Remainders of at most
// sample_size points are finished exactly with strong queries (2*rad greedy
// cover within the leftover center budget).
CarveOutcome carve_once(const TrueMetric& metric, StrongOracle& strong, WeakOracle& weak,
                        const KCenterWSParams& params, double rad, std::uint64_t carve_seed);

struct KCenterWSResult {
  CarveStatus status = CarveStatus::kCompleted;
  bool feasible = false;      // some grid radius completed
  double found_rad = 0.0;     // smallest completing grid radius (largest probed on failure)
  double true_radius = 0.0;   // max true distance under the returned assignment
  std::vector<CarvedCenter> centers;
  std::vector<std::uint32_t> assignment;
  std::size_t carve_calls = 0;
  std::uint64_t strong_raw = 0, strong_distinct = 0, weak_raw = 0, weak_distinct = 0;
};

// Radius search over the grid {lo*(1+eps)^i} (lo/hi bounds estimated from
// strong queries over one seeded sample of min(n, 2*sample_size) points).
// Binary mode assumes completion is monotone in the radius; linear mode scans
// upward and is the fallback when that assumption is suspect. Throws
// std::runtime_error("no feasible radius") only if the grid is empty; when no
// radius completes, the largest-radius outcome is returned with
// feasible=false for diagnosis.
KCenterWSResult kcenter_weak_strong(const TrueMetric& metric, StrongOracle& strong,
                                    WeakOracle& weak, const KCenterWSParams& params);

// Exact greedy ball carving: pick a live point (seeded-uniform), strong-query
// it against the live set, peel everything within 2*rad; abort once k centers
// are spent with points remaining.
struct GreedyCarveResult {
  bool completed = false;
  std::vector<PointId> centers;
  std::vector<std::uint32_t> assignment;  // index into centers
  double true_radius = 0.0;               // max assignment distance when completed
};
GreedyCarveResult greedy_carve_exact(const TrueMetric& metric, StrongOracle& strong,
                                     std::size_t k, double rad, std::uint64_t seed = 0);

// Farthest-point traversal (first center seeded-uniform). Issues exactly
// n*k oracle queries; the assignment reuses them (argmin over the oracle's
// answers, earliest center on ties). true_radius is the max true distance
// under that assignment.
struct GonzalezResult {
  std::vector<PointId> centers;
  std::vector<std::uint32_t> assignment;
  double true_radius = 0.0;
};
GonzalezResult gonzalez_baseline(const TrueMetric& metric, DistanceOracle& oracle,
                                 std::size_t k, std::uint64_t seed);

}  // namespace oraclust
