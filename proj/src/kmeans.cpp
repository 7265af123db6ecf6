#include "oraclust/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oraclust/rng.hpp"

namespace oraclust {

namespace {

// CDF draw over non-negative masses; uniform fallback when all mass is zero.
std::size_t sample_by_mass(const std::vector<double>& mass, Rng& rng) {
  double total = 0.0;
  for (double m : mass) total += m;
  if (total <= 0.0) return static_cast<std::size_t>(rng.below(mass.size()));
  const double u = rng.u01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    acc += mass[i];
    if (u < acc) return i;
  }
  return mass.size() - 1;
}

}  // namespace

std::size_t KMeansWSParams::rounds_for(std::size_t n) const {
  if (t_override) return *t_override;
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0,1)");
  const double e3 = epsilon * epsilon * epsilon;
  const double raw =
      c_iter * (4320.0 * 29160.0 / e3) * static_cast<double>(k) *
      scaled_log(static_cast<double>(n), estimator.log_base);
  return std::max<std::size_t>(k, static_cast<std::size_t>(std::llround(raw)));
}

std::pair<WeightedInstance, KMeansWSResult> kmeans_weak_strong(const TrueMetric& metric,
                                                               StrongOracle& strong,
                                                               WeakOracle& weak,
                                                               const KMeansWSParams& params) {
  const std::size_t n = metric.size();
  if (params.k == 0 || params.k > n) throw std::invalid_argument("k out of range");
  const std::size_t ball = params.estimator.ball_size_for(n);
  const std::size_t init = params.init_count.value_or(ball);
  if (init < ball) throw std::invalid_argument("init_count below ball_size");
  if (init > n) throw std::invalid_argument("init_count above n");
  const std::size_t t = params.rounds_for(n);

  Rng rng(params.seed);
  const auto ids = rng.sample_without_replacement(static_cast<std::uint32_t>(n),
                                                  static_cast<std::uint32_t>(init));
  CenterState state(n, ball);
  state.initialize({ids.begin(), ids.end()}, strong);

  KMeansWSResult res;
  std::vector<double> est(n);
  for (std::size_t round = 0; round < t; ++round) {
    if (params.strong_budget != 0 &&
        strong.ledger().strong_raw() + state.center_count() > params.strong_budget) {
      res.aborted = true;
      break;
    }
    for (std::size_t x = 0; x < n; ++x)
      est[x] = state.estimate_to_set(weak, static_cast<PointId>(x)).value;
    const auto probs = build_sampling_distribution(est);
    const auto pick = static_cast<PointId>(sample_index(probs, rng));
    state.add_center(pick, strong);
  }

  // weighted assignment pass: one unit of weight per point at its argmin entry
  const std::size_t h = state.center_count();
  WeightedInstance inst;
  inst.candidates = state.centers();
  inst.weights.assign(h, 0);
  inst.pairwise.resize(h);
  for (std::size_t i = 0; i < h; ++i) {
    inst.pairwise[i].resize(i + 1);
    for (std::size_t j = 0; j <= i; ++j)
      inst.pairwise[i][j] = state.center_distance(static_cast<std::uint32_t>(i),
                                                  static_cast<std::uint32_t>(j));
  }
  res.assignment.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto se = state.estimate_to_set(weak, static_cast<PointId>(x));
    res.assignment[x] = se.entry;
    ++inst.weights[se.entry];
    res.est_cost += se.value * se.value;
  }

  res.candidates = inst.candidates;
  res.true_cost = evaluate_cost(metric, res.candidates);
  const auto& led = strong.ledger();
  res.strong_raw = led.strong_raw();
  res.strong_distinct = led.strong_distinct();
  res.weak_raw = weak.ledger().weak_raw();
  res.weak_distinct = weak.ledger().weak_distinct();
  return {std::move(inst), std::move(res)};
}

WeightedSolveResult solve_weighted(const WeightedInstance& instance, std::size_t k,
                                   std::uint64_t seed) {
  const std::size_t h = instance.candidates.size();
  if (k == 0 || k > h) throw std::invalid_argument("k out of range for candidate set");
  if (instance.weights.size() != h) throw std::invalid_argument("weights size mismatch");
  auto dist = [&](std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    if (i < j) std::swap(i, j);
    return instance.pairwise[i][j];
  };

  Rng rng(seed);
  std::vector<std::uint32_t> sel;
  std::vector<double> w(h);
  for (std::size_t i = 0; i < h; ++i) w[i] = static_cast<double>(instance.weights[i]);
  sel.push_back(static_cast<std::uint32_t>(sample_by_mass(w, rng)));
  std::vector<double> mind(h);
  for (std::size_t i = 0; i < h; ++i) {
    const double d = dist(i, sel[0]);
    mind[i] = d * d;
  }
  std::vector<double> mass(h);
  while (sel.size() < k) {
    for (std::size_t i = 0; i < h; ++i) mass[i] = w[i] * mind[i];
    double total = 0.0;
    for (double m : mass) total += m;
    std::uint32_t pick;
    if (total <= 0.0) {
      // all remaining mass zero: take the first unselected entry
      std::vector<char> used(h, 0);
      for (auto s : sel) used[s] = 1;
      pick = 0;
      while (used[pick]) ++pick;
    } else {
      pick = static_cast<std::uint32_t>(sample_by_mass(mass, rng));
    }
    sel.push_back(pick);
    for (std::size_t i = 0; i < h; ++i) {
      const double d = dist(i, pick);
      mind[i] = std::min(mind[i], d * d);
    }
  }

  // single-swap local search on the weighted instance
  auto assignment_cost = [&](const std::vector<std::uint32_t>& centers) {
    double c = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (auto s : centers) {
        const double d = dist(i, s);
        best = std::min(best, d * d);
      }
      c += w[i] * best;
    }
    return c;
  };
  double cur = assignment_cost(sel);
  std::vector<double> d1(h), d2(h);
  std::vector<std::uint32_t> arg1(h);
  for (int pass = 0; pass < 50; ++pass) {
    // nearest and second-nearest selected center per candidate
    for (std::size_t i = 0; i < h; ++i) {
      d1[i] = d2[i] = std::numeric_limits<double>::infinity();
      arg1[i] = sel[0];
      for (auto s : sel) {
        const double d = dist(i, s);
        const double dd = d * d;
        if (dd < d1[i]) {
          d2[i] = d1[i];
          d1[i] = dd;
          arg1[i] = s;
        } else if (dd < d2[i]) {
          d2[i] = dd;
        }
      }
    }
    double best_cost = cur;
    std::size_t best_slot = 0;
    std::uint32_t best_in = 0;
    bool improved = false;
    std::vector<char> selected(h, 0);
    for (auto s : sel) selected[s] = 1;
    std::vector<double> din(h);
    for (std::uint32_t o = 0; o < h; ++o) {
      if (selected[o]) continue;
      for (std::size_t i = 0; i < h; ++i) {
        const double d = dist(i, o);
        din[i] = d * d;
      }
      for (std::size_t slot = 0; slot < sel.size(); ++slot) {
        const std::uint32_t out = sel[slot];
        double c = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
          const double keep = arg1[i] == out ? d2[i] : d1[i];
          c += w[i] * std::min(keep, din[i]);
        }
        if (c < best_cost) {
          best_cost = c;
          best_slot = slot;
          best_in = o;
          improved = true;
        }
      }
    }
    if (!improved || best_cost >= cur * (1.0 - 1e-9)) break;
    sel[best_slot] = best_in;
    cur = best_cost;
  }

  WeightedSolveResult out;
  out.center_entries = sel;
  for (auto s : sel) out.centers.push_back(instance.candidates[s]);
  out.weighted_cost = cur;
  return out;
}

BaselineResult dsq_sampling_baseline(const TrueMetric& metric, DistanceOracle& oracle,
                                     std::size_t rounds, std::uint64_t seed) {
  const std::size_t n = metric.size();
  if (rounds == 0) throw std::invalid_argument("rounds must be positive");
  Rng rng(seed);
  BaselineResult res;
  std::vector<double> mind(n, std::numeric_limits<double>::infinity());
  auto add = [&](PointId c) {
    res.centers.push_back(c);
    for (std::size_t x = 0; x < n; ++x) {
      const double d = oracle.query(static_cast<PointId>(x), c);
      mind[x] = std::min(mind[x], d * d);
    }
  };
  add(static_cast<PointId>(rng.below(n)));
  for (std::size_t r = 1; r < rounds; ++r)
    add(static_cast<PointId>(sample_by_mass(mind, rng)));
  res.true_cost = evaluate_cost(metric, res.centers);
  return res;
}

double evaluate_cost(const TrueMetric& metric, const std::vector<PointId>& centers) {
  if (centers.empty()) throw std::invalid_argument("no centers");
  const std::size_t n = metric.size();
  double cost = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double best = std::numeric_limits<double>::infinity();
    for (PointId c : centers) {
      const double d = metric.distance(static_cast<PointId>(x), c);
      best = std::min(best, d * d);
    }
    cost += best;
  }
  return cost;
}

}  // namespace oraclust
