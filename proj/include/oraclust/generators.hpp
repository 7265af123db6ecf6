#pragma once

#include <cstdint>
#include <memory>

#include "oraclust/metric.hpp"

namespace oraclust {

// Isotropic Gaussian blobs: cluster i is N(mu_scale * e_i, I) in `dim`
// dimensions (dim >= k_true), sizes n/k_true rounded round-robin. Labels
// attached.
struct SbmSpec {
  std::size_t n = 0;
  std::size_t k_true = 1;
  std::size_t dim = 0;        // 0 = k_true
  double mu_scale = 1e5;
  std::uint64_t seed = 0;
};
Dataset generate_sbm(const SbmSpec& spec);

// Matrix-backed instance: k_true near-equal partitions, distance 1 inside a
// partition and l (> 1) across. Labels attached; the triangle inequality
// holds for any l in (1, 2] trivially and for larger l because every cross
// pair has the same length.
struct HardInstanceSpec {
  std::size_t n = 0;
  std::size_t k_true = 1;
  double l = 0.0;             // 0 = default max(2, n - k_true)
  std::uint64_t seed = 0;     // reserved; the construction is deterministic
};
TrueMetric generate_hard_instance(const HardInstanceSpec& spec);

// Materialized weak answers: one coin per unordered pair (prob delta); a
// flipped same-cluster pair takes a uniformly drawn true inter-cluster
// distance, a flipped cross-cluster pair a uniformly drawn true intra-cluster
// distance. Requires labels with at least two clusters; throws otherwise.
std::shared_ptr<const SymMatrix> build_experiment_weak_matrix(const TrueMetric& metric,
                                                              double delta,
                                                              std::uint64_t seed);

}  // namespace oraclust
