#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oraclust/dataset.hpp"

namespace oraclust {

// Dense symmetric matrix with zero diagonal, stored as the strict upper
// triangle in row-major order ((0,1),(0,2),...,(1,2),...).
class SymMatrix {
 public:
  SymMatrix() = default;
  SymMatrix(std::size_t n, std::vector<double> upper);

  std::size_t size() const { return n_; }

  double at(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return upper_[index(i, j)];
  }

  void set(std::size_t i, std::size_t j, double v) {
    if (i > j) std::swap(i, j);
    upper_[index(i, j)] = v;
  }

  const std::vector<double>& upper() const { return upper_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    // strict upper triangle offset for i < j
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }
  std::size_t n_ = 0;
  std::vector<double> upper_;
};

struct AspectRatio {
  double value = 0.0;
  bool exact = true;
};

// Ground-truth distance source: Euclidean over a Dataset, or an explicit
// symmetric matrix. Matrix inputs are validated (non-negative entries, and
// the triangle inequality exhaustively when n <= 64). No n x n cache is ever
// materialized for Euclidean data; matrix mode is rejected above 8192 points.
class TrueMetric {
 public:
  static TrueMetric euclidean(Dataset data);
  static TrueMetric from_matrix(SymMatrix m, std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t size() const;
  double distance(PointId a, PointId b) const;

  bool euclidean_mode() const { return matrix_ == nullptr; }
  const Dataset& dataset() const { return data_; }
  const SymMatrix& matrix() const { return *matrix_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }

  // max pairwise distance / min nonzero pairwise distance. Exact for
  // n <= 4096, otherwise estimated from a seeded sample of at most 4096^2
  // pairs (exact=false in the result). Throws std::runtime_error
  // ("degenerate metric") when all points coincide.
  AspectRatio aspect_ratio(std::uint64_t seed = 0) const;

  // Seeded estimates of the extreme distances; same sampling rule as
  // aspect_ratio. first = min nonzero, second = max.
  std::pair<double, double> distance_range(std::uint64_t seed = 0) const;

 private:
  Dataset data_;
  std::shared_ptr<const SymMatrix> matrix_;
  std::optional<std::vector<int>> labels_;
};

// Matrix file format: first token n, then n*(n-1)/2 upper-triangle values,
// whitespace separated.
SymMatrix load_matrix_file(const std::string& path);
void save_matrix_file(const SymMatrix& m, const std::string& path);

}  // namespace oraclust
