#include "oraclust/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oraclust {

std::size_t EstimatorParams::ball_size_for(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("ball size: empty dataset");
  const double raw = c_ball * 180.0 * scaled_log(static_cast<double>(n), log_base);
  const auto rounded = static_cast<std::size_t>(std::llround(std::max(0.0, raw)));
  return std::min<std::size_t>(n, std::max<std::size_t>(3, rounded));
}

double point_to_point_estimate(WeakOracle& weak, PointId x, const BallSpec& ball) {
  if (ball.members.empty()) throw std::invalid_argument("estimate: empty ball");
  std::vector<double> answers;
  answers.reserve(ball.members.size());
  for (PointId z : ball.members) answers.push_back(weak.query(x, z));
  const std::size_t mid = (answers.size() - 1) / 2;
  std::nth_element(answers.begin(), answers.begin() + mid, answers.end());
  return answers[mid];
}

CenterState::CenterState(std::size_t n_points, std::size_t ball_size)
    : n_points_(n_points), ball_size_(ball_size) {
  if (ball_size_ < 1) throw std::invalid_argument("ball_size must be positive");
}

void CenterState::initialize(const std::vector<PointId>& centers, StrongOracle& strong) {
  if (centers.size() < ball_size_)
    throw std::invalid_argument("initialize: need at least ball_size centers");
  if (!centers_.empty()) throw std::logic_error("initialize: state already seeded");
  centers_ = centers;
  const std::size_t m = centers_.size();
  dist_.resize(m);
  for (std::size_t i = 0; i < m; ++i) dist_[i].assign(i + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) dist_[j][i] = strong.query(centers_[i], centers_[j]);
  radius_.assign(m, 0.0);
  members_.assign(m, {});
  ball_version_.assign(m, 0);
  value_.assign(m, {});
  value_version_.assign(m, {});
  refresh_after_append();
}

void CenterState::add_center(PointId p, StrongOracle& strong) {
  if (centers_.empty()) throw std::logic_error("add_center: initialize first");
  const std::size_t m = centers_.size();
  std::vector<double> row(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) row[i] = strong.query(p, centers_[i]);
  centers_.push_back(p);
  dist_.push_back(std::move(row));
  radius_.push_back(0.0);
  members_.push_back({});
  ball_version_.push_back(0);
  value_.push_back({});
  value_version_.push_back({});
  refresh_after_append();
}

double CenterState::center_distance(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return 0.0;
  if (a < b) std::swap(a, b);
  return dist_[a][b];
}

void CenterState::refresh_after_append() {
  const std::size_t m = centers_.size();
  const std::size_t kth = std::min(ball_size_, m);  // self at distance 0 counts
  for (std::size_t e = 0; e < m; ++e) {
    scratch_.resize(m);
    for (std::size_t j = 0; j < m; ++j) scratch_[j] = center_distance(e, j);
    std::nth_element(scratch_.begin(), scratch_.begin() + (kth - 1), scratch_.end());
    const double r = scratch_[kth - 1];
    std::vector<std::uint32_t> mem;
    mem.reserve(kth);
    for (std::uint32_t j = 0; j < m; ++j)
      if (center_distance(e, j) <= r) mem.push_back(j);
    if (r != radius_[e] || mem != members_[e]) {
      radius_[e] = r;
      members_[e] = std::move(mem);
      ++ball_version_[e];
    }
  }
}

BallSpec CenterState::ball(std::uint32_t entry) const {
  BallSpec b;
  b.center = centers_[entry];
  b.radius = radius_[entry];
  b.members.reserve(members_[entry].size());
  for (std::uint32_t e : members_[entry]) b.members.push_back(centers_[e]);
  return b;
}

double CenterState::estimate(WeakOracle& weak, PointId x, std::uint32_t entry) {
  auto& vals = value_[entry];
  auto& vers = value_version_[entry];
  if (vals.empty()) {
    vals.assign(n_points_, 0.0);
    vers.assign(n_points_, 0);  // 0 = never computed; versions start at 1
  }
  if (vers[x] != ball_version_[entry]) {
    const auto& mem = members_[entry];
    scratch_.resize(mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i)
      scratch_[i] = weak.query(x, centers_[mem[i]]);
    const std::size_t mid = (mem.size() - 1) / 2;
    std::nth_element(scratch_.begin(), scratch_.begin() + mid, scratch_.begin() + mem.size());
    vals[x] = scratch_[mid];
    vers[x] = ball_version_[entry];
  }
  return vals[x];
}

SetEstimate CenterState::estimate_to_set(WeakOracle& weak, PointId x) {
  if (centers_.size() < ball_size_)
    throw std::logic_error("estimate: fewer centers than ball_size");
  SetEstimate best;
  for (std::uint32_t e = 0; e < centers_.size(); ++e) {
    const double v = estimate(weak, x, e) + radius_[e];
    if (v < best.value) {
      best.value = v;
      best.entry = e;
    }
  }
  best.center = centers_[best.entry];
  return best;
}

std::vector<double> build_sampling_distribution(const std::vector<double>& estimates) {
  if (estimates.empty()) throw std::invalid_argument("empty estimate vector");
  double total = 0.0;
  for (double e : estimates) {
    if (!(e >= 0.0)) throw std::invalid_argument("estimates must be non-negative");
    total += e * e;
  }
  std::vector<double> probs(estimates.size());
  if (total == 0.0) {
    const double u = 1.0 / static_cast<double>(estimates.size());
    std::fill(probs.begin(), probs.end(), u);
    return probs;
  }
  for (std::size_t i = 0; i < estimates.size(); ++i) probs[i] = estimates[i] * estimates[i] / total;
  return probs;
}

}  // namespace oraclust
