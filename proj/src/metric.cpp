#include "oraclust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "oraclust/rng.hpp"
#include "oraclust/rows.hpp"

namespace oraclust {

SymMatrix::SymMatrix(std::size_t n, std::vector<double> upper) : n_(n), upper_(std::move(upper)) {
  if (upper_.size() != n * (n - 1) / 2)
    throw std::invalid_argument("matrix: expected n*(n-1)/2 entries");
}

namespace {

constexpr std::size_t kMaxMatrixPoints = 8192;   // no dense cache beyond this
constexpr std::size_t kExactAspectLimit = 4096;  // exact pair scan up to here
constexpr std::size_t kSampledPairs = kExactAspectLimit * kExactAspectLimit;

void validate_matrix(const SymMatrix& m) {
  const std::size_t n = m.size();
  if (n > kMaxMatrixPoints)
    throw std::invalid_argument("matrix metric limited to 8192 points");
  for (double v : m.upper())
    if (!(v >= 0.0)) throw std::invalid_argument("matrix: negative or NaN distance");
  if (n <= 64) {
    // exhaustive triangle-inequality check, small relative slack for
    // generator round-off
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const double lhs = m.at(i, k);
          const double rhs = m.at(i, j) + m.at(j, k);
          if (lhs > rhs + 1e-9 * std::max(1.0, rhs))
            throw std::invalid_argument("matrix: triangle inequality violated");
        }
  }
}

}  // namespace

TrueMetric TrueMetric::euclidean(Dataset data) {
  TrueMetric m;
  m.labels_ = data.labels;
  m.data_ = std::move(data);
  return m;
}

TrueMetric TrueMetric::from_matrix(SymMatrix mat, std::optional<std::vector<int>> labels) {
  validate_matrix(mat);
  if (labels && labels->size() != mat.size())
    throw std::invalid_argument("labels size does not match matrix");
  TrueMetric m;
  m.matrix_ = std::make_shared<const SymMatrix>(std::move(mat));
  m.labels_ = std::move(labels);
  return m;
}

std::size_t TrueMetric::size() const { return matrix_ ? matrix_->size() : data_.n; }

double TrueMetric::distance(PointId a, PointId b) const {
  if (matrix_) return matrix_->at(a, b);
  return data_.distance(a, b);
}

std::pair<double, double> TrueMetric::distance_range(std::uint64_t seed) const {
  const std::size_t n = size();
  if (n < 2) throw std::runtime_error("degenerate metric");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  auto feed = [&](double d) {
    if (d > 0.0 && d < lo) lo = d;
    if (d > hi) hi = d;
  };
  if (n <= kExactAspectLimit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) feed(distance(PointId(i), PointId(j)));
  } else {
    Rng rng(mix64(seed, 0x61737065637452ULL));
    for (std::size_t s = 0; s < kSampledPairs; ++s) {
      const auto i = static_cast<PointId>(rng.below(n));
      const auto j = static_cast<PointId>(rng.below(n));
      if (i != j) feed(distance(i, j));
    }
  }
  if (hi == 0.0) throw std::runtime_error("degenerate metric");
  return {lo, hi};
}

AspectRatio TrueMetric::aspect_ratio(std::uint64_t seed) const {
  const auto [lo, hi] = distance_range(seed);
  return {hi / lo, size() <= kExactAspectLimit};
}

SymMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw std::runtime_error(path + ": bad point count");
  std::vector<double> upper(n * (n - 1) / 2);
  for (std::size_t i = 0; i < upper.size(); ++i)
    if (!(in >> upper[i]))
      throw std::runtime_error(path + ": expected " + std::to_string(upper.size()) +
                               " distances, got " + std::to_string(i));
  return SymMatrix(n, std::move(upper));
}

void save_matrix_file(const SymMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << m.size() << "\n";
  const auto& upper = m.upper();
  for (std::size_t i = 0; i < upper.size(); ++i)
    out << format_double(upper[i]) << ((i + 1) % 8 == 0 ? "\n" : " ");
  out << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace oraclust
