#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "oraclust/metric.hpp"
#include "oraclust/rng.hpp"

namespace oraclust {

// Tracks every oracle query. Raw counts every call; distinct counts unordered
// point pairs (a,a) included. Backed by a bitmap over the pair index space
// when that fits in 64 MiB, else by a hash set; counts are identical.
class QueryLedger {
 public:
  explicit QueryLedger(std::size_t n);

  void record_strong(PointId a, PointId b) {
    ++strong_raw_;
    if (insert(a, b, strong_seen_, strong_bits_)) ++strong_distinct_;
  }
  void record_weak(PointId a, PointId b) {
    ++weak_raw_;
    if (insert(a, b, weak_seen_, weak_bits_)) ++weak_distinct_;
  }

  std::uint64_t strong_raw() const { return strong_raw_; }
  std::uint64_t strong_distinct() const { return strong_distinct_; }
  std::uint64_t weak_raw() const { return weak_raw_; }
  std::uint64_t weak_distinct() const { return weak_distinct_; }

  // "strong_raw,strong_distinct,weak_raw,weak_distinct"
  static std::string csv_header();
  std::string csv_row() const;

 private:
  std::uint64_t pair_key(PointId a, PointId b) const {
    if (a > b) std::swap(a, b);
    // unordered pair (a<=b) -> index into the upper triangle incl. diagonal
    const std::uint64_t row_start = std::uint64_t{a} * (2 * n_ - a + 1) / 2;
    return row_start + (b - a);
  }
  bool insert(PointId a, PointId b, std::unordered_set<std::uint64_t>& seen,
              std::vector<std::uint64_t>& bits);

  std::size_t n_ = 0;
  bool use_bitmap_ = false;
  std::uint64_t strong_raw_ = 0, strong_distinct_ = 0;
  std::uint64_t weak_raw_ = 0, weak_distinct_ = 0;
  std::vector<std::uint64_t> strong_bits_, weak_bits_;
  std::unordered_set<std::uint64_t> strong_seen_, weak_seen_;
};

enum class CorruptionMode { kUniformRange, kLabelSwap };

struct WeakOracleConfig {
  double delta = 0.0;  // corruption probability, [0,1]; experiment configs require < 1/2
  CorruptionMode mode = CorruptionMode::kUniformRange;
  std::uint64_t seed = 0;
};

class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  virtual double query(PointId a, PointId b) = 0;
  virtual std::size_t size() const = 0;
  virtual const QueryLedger& ledger() const = 0;
};

// Metered exact distances.
class StrongOracle : public DistanceOracle {
 public:
  StrongOracle(const TrueMetric& metric, QueryLedger& ledger)
      : metric_(&metric), ledger_(&ledger) {}

  double query(PointId a, PointId b) override {
    ledger_->record_strong(a, b);
    return metric_->distance(a, b);
  }
  std::size_t size() const override { return metric_->size(); }
  const QueryLedger& ledger() const override { return *ledger_; }

 private:
  const TrueMetric* metric_;
  QueryLedger* ledger_;
};

// Metered noisy distances. Answers are persistent: the value for an unordered
// pair is a pure function of (seed, pair), so repeat queries agree without any
// stored state. Self-pairs (a,a) always answer 0, matching matrix mode where
// the diagonal is never perturbed.
class WeakOracle : public DistanceOracle {
 public:
  // PRF mode; corruption values are derived from the config and the metric.
  WeakOracle(const TrueMetric& metric, const WeakOracleConfig& config, QueryLedger& ledger);
  // Matrix mode; answers come verbatim from a prebuilt perturbed matrix.
  WeakOracle(const TrueMetric& metric, std::shared_ptr<const SymMatrix> answers,
             QueryLedger& ledger);

  double query(PointId a, PointId b) override {
    ledger_->record_weak(a, b);
    return answer(a, b);
  }
  std::size_t size() const override { return metric_->size(); }
  const QueryLedger& ledger() const override { return *ledger_; }

  // Answer without touching the ledger (used internally and by tests).
  double answer(PointId a, PointId b) const;

  // Whether the PRF flags this pair as corrupted. Depends only on
  // (seed, unordered pair); matrix mode returns false.
  bool is_corrupted(PointId a, PointId b) const;

 private:
  double corrupted_answer(PointId a, PointId b, std::uint64_t key) const;

  const TrueMetric* metric_;
  QueryLedger* ledger_;
  WeakOracleConfig config_;
  std::shared_ptr<const SymMatrix> matrix_;  // null in PRF mode
  double range_lo_ = 0.0, range_hi_ = 0.0;   // uniform-range bounds
  std::vector<std::vector<PointId>> label_buckets_;
  bool has_intra_pair_ = false;  // some bucket has >= 2 points
};

// The value a PRF-mode weak oracle returns for a pair it corrupts.
// Precondition: the pair is flagged corrupted under this config.
double corrupted_value(const TrueMetric& metric, const WeakOracleConfig& config,
                       PointId a, PointId b);

}  // namespace oraclust
