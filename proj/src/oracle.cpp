#include "oraclust/oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace oraclust {

namespace {
constexpr std::size_t kBitmapByteLimit = 64ull << 20;  // 64 MiB per pair set

std::uint64_t pair_count(std::size_t n) { return std::uint64_t{n} * (n + 1) / 2; }
}  // namespace

QueryLedger::QueryLedger(std::size_t n) : n_(n) {
  use_bitmap_ = n > 0 && pair_count(n) / 8 + 1 <= kBitmapByteLimit;
  if (use_bitmap_) {
    const std::size_t words = static_cast<std::size_t>(pair_count(n) / 64 + 1);
    strong_bits_.assign(words, 0);
    weak_bits_.assign(words, 0);
  }
}

bool QueryLedger::insert(PointId a, PointId b, std::unordered_set<std::uint64_t>& seen,
                         std::vector<std::uint64_t>& bits) {
  const std::uint64_t key = pair_key(a, b);
  if (use_bitmap_) {
    const std::uint64_t mask = 1ull << (key & 63);
    std::uint64_t& word = bits[key >> 6];
    if (word & mask) return false;
    word |= mask;
    return true;
  }
  return seen.insert(key).second;
}

std::string QueryLedger::csv_header() { return "strong_raw,strong_distinct,weak_raw,weak_distinct"; }

std::string QueryLedger::csv_row() const {
  std::ostringstream os;
  os << strong_raw_ << ',' << strong_distinct_ << ',' << weak_raw_ << ',' << weak_distinct_;
  return os.str();
}

WeakOracle::WeakOracle(const TrueMetric& metric, const WeakOracleConfig& config,
                       QueryLedger& ledger)
    : metric_(&metric), ledger_(&ledger), config_(config) {
  if (!(config.delta >= 0.0 && config.delta <= 1.0))
    throw std::invalid_argument("weak oracle: delta must be in [0,1]");
  if (config.delta == 0.0) return;  // nothing below is ever consulted
  if (config_.mode == CorruptionMode::kUniformRange) {
    const auto [lo, hi] = metric_->distance_range(config.seed);
    range_lo_ = lo;
    range_hi_ = hi;
  } else {
    const auto& labels = metric_->labels();
    if (!labels) throw std::invalid_argument("label-swap corruption requires labels");
    int max_label = 0;
    for (int l : *labels) {
      if (l < 0) throw std::invalid_argument("label-swap corruption: negative label");
      max_label = std::max(max_label, l);
    }
    label_buckets_.assign(static_cast<std::size_t>(max_label) + 1, {});
    for (std::size_t i = 0; i < labels->size(); ++i)
      label_buckets_[(*labels)[i]].push_back(static_cast<PointId>(i));
    std::size_t nonempty = 0;
    for (const auto& bucket : label_buckets_) {
      if (!bucket.empty()) ++nonempty;
      if (bucket.size() >= 2) has_intra_pair_ = true;
    }
    if (nonempty < 2)
      throw std::invalid_argument("label-swap corruption requires at least two clusters");
  }
}

WeakOracle::WeakOracle(const TrueMetric& metric, std::shared_ptr<const SymMatrix> answers,
                       QueryLedger& ledger)
    : metric_(&metric), ledger_(&ledger), matrix_(std::move(answers)) {
  if (!matrix_ || matrix_->size() != metric.size())
    throw std::invalid_argument("weak oracle: answer matrix size mismatch");
}

bool WeakOracle::is_corrupted(PointId a, PointId b) const {
  if (matrix_ || a == b || config_.delta == 0.0) return false;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = mix64(config_.seed, (std::uint64_t{a} << 32) | b);
  return u01_from_word(mix64(key, 1)) < config_.delta;
}

double WeakOracle::answer(PointId a, PointId b) const {
  if (matrix_) return matrix_->at(a, b);
  if (a == b) return 0.0;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = mix64(config_.seed, (std::uint64_t{a} << 32) | b);
  if (config_.delta == 0.0 || u01_from_word(mix64(key, 1)) >= config_.delta)
    return metric_->distance(a, b);
  return corrupted_answer(a, b, key);
}

double WeakOracle::corrupted_answer(PointId a, PointId b, std::uint64_t key) const {
  if (config_.mode == CorruptionMode::kUniformRange)
    return range_lo_ + u01_from_word(mix64(key, 2)) * (range_hi_ - range_lo_);

  // label-swap: swap the pair for a uniformly drawn true distance from the
  // opposite relation (inter for same-cluster pairs, intra for cross pairs)
  const auto& labels = *metric_->labels();
  const bool same = labels[a] == labels[b];
  if (!same && !has_intra_pair_)
    throw std::runtime_error("label-swap corruption: no intra-cluster pair exists");
  Rng rng(mix64(key, 2));
  const auto n = static_cast<std::uint32_t>(metric_->size());
  for (;;) {
    const auto i = static_cast<PointId>(rng.below(n));
    const auto j = static_cast<PointId>(rng.below(n));
    if (i == j) continue;
    const bool pair_same = labels[i] == labels[j];
    if (pair_same != same) return metric_->distance(i, j);
  }
}

double corrupted_value(const TrueMetric& metric, const WeakOracleConfig& config, PointId a,
                       PointId b) {
  QueryLedger scratch(metric.size());
  WeakOracle oracle(metric, config, scratch);
  if (!oracle.is_corrupted(a, b))
    throw std::invalid_argument("corrupted_value: pair is not flagged corrupted");
  return oracle.answer(a, b);
}

}  // namespace oraclust
