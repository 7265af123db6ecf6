#include "oraclust/kcenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "oraclust/rng.hpp"

namespace oraclust {

std::string to_string(CarveStatus s) {
  switch (s) {
    case CarveStatus::kCompleted: return "completed";
    case CarveStatus::kAbortTooManyCenters: return "abort_too_many_centers";
    case CarveStatus::kAbortSparseBall: return "abort_sparse_ball";
    case CarveStatus::kAbortSmallsetInfeasible: return "abort_smallset_infeasible";
  }
  return "unknown";
}

std::size_t KCenterWSParams::sample_size_for(std::size_t n) const {
  const double raw = c_sample * 180.0 * static_cast<double>(k) *
                     scaled_log(static_cast<double>(n), estimator.log_base);
  return std::max<std::size_t>(k + 1, static_cast<std::size_t>(std::llround(std::max(0.0, raw))));
}

std::size_t KCenterWSParams::ball_threshold_for(std::size_t n) const {
  return estimator.ball_size_for(n);
}

CarveOutcome carve_once(const TrueMetric& metric, StrongOracle& strong, WeakOracle& weak,
                        const KCenterWSParams& params, double rad, std::uint64_t carve_seed) {
  const std::size_t n = metric.size();
  if (params.k == 0 || params.k > n) throw std::invalid_argument("k out of range");
  const std::size_t sample_size = params.sample_size_for(n);
  const std::size_t ball_threshold = params.ball_threshold_for(n);
  if (sample_size < ball_threshold)
    throw std::invalid_argument("sample_size below ball_threshold");

  Rng rng(carve_seed);
  CarveOutcome out;
  out.assignment.assign(n, CarveOutcome::kUnassigned);
  std::vector<PointId> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = static_cast<PointId>(i);

  std::vector<double> answers;
  while (!live.empty()) {
    if (out.centers.size() == params.k) {
      out.status = CarveStatus::kAbortTooManyCenters;
      return out;
    }

    if (live.size() <= sample_size) {
      // strong finish: pay all pairs once, then greedily cover with 2*rad
      // balls within the leftover center budget
      std::map<std::pair<PointId, PointId>, double> d;
      for (std::size_t i = 0; i < live.size(); ++i)
        for (std::size_t j = i + 1; j < live.size(); ++j)
          d[{std::min(live[i], live[j]), std::max(live[i], live[j])}] =
              strong.query(live[i], live[j]);
      auto dist = [&](PointId a, PointId b) {
        if (a == b) return 0.0;
        return d.at({std::min(a, b), std::max(a, b)});
      };
      std::vector<PointId> remaining = live;
      while (!remaining.empty()) {
        if (out.centers.size() == params.k) {
          out.status = CarveStatus::kAbortSmallsetInfeasible;
          return out;
        }
        const PointId c = remaining[rng.below(remaining.size())];
        const auto idx = static_cast<std::uint32_t>(out.centers.size());
        out.centers.push_back({c, {}});
        std::vector<PointId> keep;
        for (PointId s : remaining) {
          if (dist(c, s) <= 2.0 * rad) {
            out.assignment[s] = idx;
          } else {
            keep.push_back(s);
          }
        }
        remaining = std::move(keep);
      }
      out.status = CarveStatus::kCompleted;
      return out;
    }

    // sample without replacement from the live set
    const auto pick_idx = rng.sample_without_replacement(
        static_cast<std::uint32_t>(live.size()), static_cast<std::uint32_t>(sample_size));
    std::vector<PointId> sample(sample_size);
    for (std::size_t i = 0; i < sample_size; ++i) sample[i] = live[pick_idx[i]];

    // all pairwise strong distances inside the sample
    std::vector<std::vector<double>> sd(sample_size, std::vector<double>(sample_size, 0.0));
    for (std::size_t i = 0; i < sample_size; ++i)
      for (std::size_t j = i + 1; j < sample_size; ++j)
        sd[i][j] = sd[j][i] = strong.query(sample[i], sample[j]);

    // densest 2*rad ball center, smallest point id on ties
    std::size_t best = 0, best_count = 0;
    for (std::size_t i = 0; i < sample_size; ++i) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < sample_size; ++j)
        if (sd[i][j] <= 2.0 * rad) ++count;
      if (count > best_count || (count == best_count && sample[i] < sample[best])) {
        best = i;
        best_count = count;
      }
    }
    if (best_count < ball_threshold) {
      out.status = CarveStatus::kAbortSparseBall;
      return out;
    }

    // retain the ball_threshold closest sampled companions (ties by id)
    std::vector<std::size_t> in_ball;
    for (std::size_t j = 0; j < sample_size; ++j)
      if (sd[best][j] <= 2.0 * rad) in_ball.push_back(j);
    std::sort(in_ball.begin(), in_ball.end(), [&](std::size_t a, std::size_t b) {
      if (sd[best][a] != sd[best][b]) return sd[best][a] < sd[best][b];
      return sample[a] < sample[b];
    });
    in_ball.resize(ball_threshold);
    CarvedCenter center;
    center.center = sample[best];
    for (std::size_t j : in_ball) center.companions.push_back(sample[j]);

    const auto idx = static_cast<std::uint32_t>(out.centers.size());
    out.centers.push_back(std::move(center));

    // peel every live point whose companion-median estimate fits in 4*rad
    std::vector<PointId> keep;
    keep.reserve(live.size());
    const auto& comps = out.centers[idx].companions;
    for (PointId s : live) {
      answers.clear();
      for (PointId z : comps) answers.push_back(weak.query(s, z));
      const std::size_t mid = (answers.size() - 1) / 2;
      std::nth_element(answers.begin(), answers.begin() + mid, answers.end());
      if (answers[mid] <= 4.0 * rad) {
        out.assignment[s] = idx;
      } else {
        keep.push_back(s);
      }
    }
    live = std::move(keep);
  }
  out.status = CarveStatus::kCompleted;
  return out;
}

namespace {

double assignment_radius(const TrueMetric& metric, const std::vector<CarvedCenter>& centers,
                         const std::vector<std::uint32_t>& assignment) {
  double r = 0.0;
  for (std::size_t x = 0; x < assignment.size(); ++x)
    if (assignment[x] != CarveOutcome::kUnassigned)
      r = std::max(r, metric.distance(static_cast<PointId>(x), centers[assignment[x]].center));
  return r;
}

}  // namespace

KCenterWSResult kcenter_weak_strong(const TrueMetric& metric, StrongOracle& strong,
                                    WeakOracle& weak, const KCenterWSParams& params) {
  const std::size_t n = metric.size();
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const std::size_t sample_size = params.sample_size_for(n);

  // grid bounds from one seeded sample, paid through the strong oracle
  const std::size_t m = std::min(n, 2 * sample_size);
  Rng bounds_rng(mix64(params.seed, 0xb0bULL));
  const auto pick = bounds_rng.sample_without_replacement(static_cast<std::uint32_t>(n),
                                                          static_cast<std::uint32_t>(m));
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = strong.query(pick[i], pick[j]);
      if (d > 0.0) lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  if (hi <= 0.0) throw std::runtime_error("degenerate metric");

  std::vector<double> grid;
  for (double r = lo; r < hi; r *= 1.0 + params.epsilon) grid.push_back(r);
  grid.push_back(hi);
  const std::size_t g = grid.size();

  KCenterWSResult res;
  std::map<std::size_t, CarveOutcome> probed;
  auto probe = [&](std::size_t i) -> const CarveOutcome& {
    auto it = probed.find(i);
    if (it == probed.end()) {
      ++res.carve_calls;
      it = probed.emplace(i, carve_once(metric, strong, weak, params, grid[i],
                                        mix64(params.seed, 1000 + i)))
               .first;
    }
    return it->second;
  };

  std::size_t final_idx;
  if (params.binary_search) {
    // bisection for the smallest completing radius; ceil(log2 g) probes, plus
    // one verification probe when every probe failed and the top is untouched
    std::size_t lo_i = 0, hi_i = g - 1;
    while (lo_i < hi_i) {
      const std::size_t mid = (lo_i + hi_i) / 2;
      if (probe(mid).status == CarveStatus::kCompleted)
        hi_i = mid;
      else
        lo_i = mid + 1;
    }
    final_idx = lo_i;
    probe(final_idx);
  } else {
    final_idx = 0;
    while (probe(final_idx).status != CarveStatus::kCompleted && final_idx + 1 < g) ++final_idx;
  }

  const CarveOutcome& out = probed.at(final_idx);
  res.status = out.status;
  res.feasible = out.status == CarveStatus::kCompleted;
  res.found_rad = grid[final_idx];
  res.centers = out.centers;
  res.assignment = out.assignment;
  res.true_radius = assignment_radius(metric, res.centers, res.assignment);
  const auto& sled = strong.ledger();
  res.strong_raw = sled.strong_raw();
  res.strong_distinct = sled.strong_distinct();
  res.weak_raw = weak.ledger().weak_raw();
  res.weak_distinct = weak.ledger().weak_distinct();
  return res;
}

GreedyCarveResult greedy_carve_exact(const TrueMetric& metric, StrongOracle& strong, std::size_t k,
                                     double rad, std::uint64_t seed) {
  const std::size_t n = metric.size();
  if (k == 0 || k > n) throw std::invalid_argument("k out of range");
  Rng rng(seed);
  GreedyCarveResult res;
  res.assignment.assign(n, CarveOutcome::kUnassigned);
  std::vector<PointId> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = static_cast<PointId>(i);
  while (!remaining.empty()) {
    if (res.centers.size() == k) return res;  // completed stays false
    const PointId c = remaining[rng.below(remaining.size())];
    const auto idx = static_cast<std::uint32_t>(res.centers.size());
    res.centers.push_back(c);
    std::vector<PointId> keep;
    for (PointId s : remaining) {
      const double d = strong.query(c, s);
      if (d <= 2.0 * rad) {
        res.assignment[s] = idx;
        res.true_radius = std::max(res.true_radius, d);
      } else {
        keep.push_back(s);
      }
    }
    remaining = std::move(keep);
  }
  res.completed = true;
  return res;
}

GonzalezResult gonzalez_baseline(const TrueMetric& metric, DistanceOracle& oracle, std::size_t k,
                                 std::uint64_t seed) {
  const std::size_t n = metric.size();
  if (k == 0 || k > n) throw std::invalid_argument("k out of range");
  Rng rng(seed);
  GonzalezResult res;
  std::vector<double> mind(n, std::numeric_limits<double>::infinity());
  res.assignment.assign(n, 0);
  PointId next = static_cast<PointId>(rng.below(n));
  for (std::size_t c = 0; c < k; ++c) {
    res.centers.push_back(next);
    for (std::size_t x = 0; x < n; ++x) {
      const double a = oracle.query(static_cast<PointId>(x), next);
      if (a < mind[x]) {
        mind[x] = a;
        res.assignment[x] = static_cast<std::uint32_t>(c);
      }
    }
    // farthest point by the oracle's answers; smallest id on ties
    std::size_t far = 0;
    for (std::size_t x = 1; x < n; ++x)
      if (mind[x] > mind[far]) far = x;
    next = static_cast<PointId>(far);
  }
  for (std::size_t x = 0; x < n; ++x)
    res.true_radius = std::max(
        res.true_radius, metric.distance(static_cast<PointId>(x), res.centers[res.assignment[x]]));
  return res;
}

}  // namespace oraclust
