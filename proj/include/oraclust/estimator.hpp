#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "oraclust/oracle.hpp"

namespace oraclust {

enum class LogBase { k2, kE };

inline double scaled_log(double n, LogBase base) {
  return base == LogBase::k2 ? std::log2(n) : std::log(n);
}

struct EstimatorParams {
  double c_ball = 0.05;       // scales the ball size against 180*log(n)
  LogBase log_base = LogBase::k2;

  // max(3, round(c_ball * 180 * log(n))), clamped to n
  std::size_t ball_size_for(std::size_t n) const;
};

// A center together with the companion points used to estimate distances to
// it: every stored center within `radius` of it.
struct BallSpec {
  PointId center = 0;
  double radius = 0.0;
  std::vector<PointId> members;
};

// Lower median (index (m-1)/2 of the sorted multiset) of one weak query per
// ball member. Issues exactly members.size() raw weak queries.
double point_to_point_estimate(WeakOracle& weak, PointId x, const BallSpec& ball);

struct SetEstimate {
  double value = std::numeric_limits<double>::infinity();  // median + ball radius, minimized
  std::uint32_t entry = 0;  // index into the center list (earliest on ties)
  PointId center = 0;
};

// Maintained center multiset for the sampling loop. Keeps exact pairwise
// center distances (paid once through the strong oracle), each center's ball
// (radius = ball_size-th smallest distance to a center, self included at 0;
// members = all centers within it), and a per-(center, point) estimate cache
// versioned by ball composition, so incremental updates equal a recompute
// from scratch.
class CenterState {
 public:
  CenterState(std::size_t n_points, std::size_t ball_size);

  // Seeds the state with the initial centers; issues C(|centers|, 2) strong
  // queries (all pairs, in append order). Requires |centers| >= ball_size.
  void initialize(const std::vector<PointId>& centers, StrongOracle& strong);

  // Appends one center; issues |centers| strong queries (new vs each existing)
  // and refreshes every ball against the enlarged set.
  void add_center(PointId p, StrongOracle& strong);

  std::size_t center_count() const { return centers_.size(); }
  std::size_t ball_size() const { return ball_size_; }
  PointId center_point(std::uint32_t entry) const { return centers_[entry]; }
  const std::vector<PointId>& centers() const { return centers_; }
  double radius(std::uint32_t entry) const { return radius_[entry]; }
  BallSpec ball(std::uint32_t entry) const;
  double center_distance(std::uint32_t a, std::uint32_t b) const;

  // Cached median estimate from x to one center entry (no +radius term).
  double estimate(WeakOracle& weak, PointId x, std::uint32_t entry);

  // min over entries of (estimate + radius); earliest entry wins ties.
  SetEstimate estimate_to_set(WeakOracle& weak, PointId x);

 private:
  void refresh_after_append();
  std::size_t n_points_;
  std::size_t ball_size_;
  std::vector<PointId> centers_;
  std::vector<std::vector<double>> dist_;     // dist_[i][j], j <= i, exact
  std::vector<double> radius_;                // per entry
  std::vector<std::vector<std::uint32_t>> members_;  // per entry, sorted entry ids
  std::vector<std::uint32_t> ball_version_;
  std::vector<std::vector<double>> value_;           // value_[entry][x]
  std::vector<std::vector<std::uint32_t>> value_version_;
  std::vector<double> scratch_;
};

// Same operation as CenterState::add_center; spelled as a free function where
// call sites read better that way.
inline void refresh_balls(CenterState& state, StrongOracle& strong, PointId new_center) {
  state.add_center(new_center, strong);
}

// p_i = e_i^2 / sum(e^2); uniform when the sum is zero. Output sums to 1
// within 1e-12.
std::vector<double> build_sampling_distribution(const std::vector<double>& estimates);

}  // namespace oraclust
