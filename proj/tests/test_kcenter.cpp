#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oraclust/brute.hpp"
#include "oraclust/generators.hpp"
#include "oraclust/kcenter.hpp"
#include "oraclust/rng.hpp"

using namespace oraclust;

namespace {

TrueMetric line_metric(std::vector<double> xs) {
  Dataset d;
  d.dim = 1;
  d.n = xs.size();
  d.coords = std::move(xs);
  return TrueMetric::euclidean(std::move(d));
}

struct Harness {
  TrueMetric metric;
  QueryLedger ledger;
  StrongOracle strong;
  WeakOracle weak;
  Harness(TrueMetric m, double delta, std::uint64_t seed)
      : metric(std::move(m)),
        ledger(metric.size()),
        strong(metric, ledger),
        weak(metric, {delta, CorruptionMode::kUniformRange, seed}, ledger) {}
};

std::vector<double> ramp(std::size_t n, double step = 1.0, double base = 0.0) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = base + step * i;
  return xs;
}

std::size_t ceil_log2(std::size_t g) {
  return g <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(g - 1));
}

}  // namespace

TEST_CASE("carve status names") {
  CHECK(to_string(CarveStatus::kCompleted) == "completed");
  CHECK(to_string(CarveStatus::kAbortTooManyCenters) == "abort_too_many_centers");
  CHECK(to_string(CarveStatus::kAbortSparseBall) == "abort_sparse_ball");
  CHECK(to_string(CarveStatus::kAbortSmallsetInfeasible) == "abort_smallset_infeasible");
}

TEST_CASE("sample and threshold sizing") {
  KCenterWSParams p;
  p.k = 3;
  p.c_sample = 20.0 / (180.0 * 3.0 * std::log2(40.0));
  CHECK(p.sample_size_for(40) == 20);
  p.c_sample = 1e-12;
  CHECK(p.sample_size_for(40) == 4);  // k+1 floor
  p.estimator.c_ball = 1e-9;
  CHECK(p.ball_threshold_for(40) == 3);
}

TEST_CASE("one giant-radius iteration peels everything") {
  Harness h(line_metric(ramp(40)), 0.0, 7);
  KCenterWSParams p;
  p.k = 3;
  p.c_sample = 20.0 / (180.0 * 3.0 * std::log2(40.0));
  p.estimator.c_ball = 1e-9;
  REQUIRE(p.sample_size_for(40) == 20);
  const auto out = carve_once(h.metric, h.strong, h.weak, p, 39.0, 123);
  CHECK(out.status == CarveStatus::kCompleted);
  REQUIRE(out.centers.size() == 1);
  CHECK(out.centers[0].companions.size() == 3);
  CHECK(h.ledger.strong_raw() == 190);  // C(20,2): one sampled pass, nothing else
  CHECK(h.ledger.weak_raw() == 40 * 3);
  for (auto a : out.assignment) CHECK(a == 0);
}

TEST_CASE("tiny radius aborts on a sparse ball") {
  Harness h(line_metric(ramp(40)), 0.0, 7);
  KCenterWSParams p;
  p.k = 3;
  p.c_sample = 20.0 / (180.0 * 3.0 * std::log2(40.0));
  p.estimator.c_ball = 1e-9;
  const auto out = carve_once(h.metric, h.strong, h.weak, p, 0.1, 123);
  CHECK(out.status == CarveStatus::kAbortSparseBall);
  CHECK(out.centers.empty());
  for (auto a : out.assignment) CHECK(a == CarveOutcome::kUnassigned);
}

TEST_CASE("center budget exhausts with live points left") {
  std::vector<double> xs;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 20; ++i) xs.push_back(c * 1000.0 + i);
  Harness h(line_metric(std::move(xs)), 0.0, 9);
  KCenterWSParams p;
  p.k = 1;
  p.c_sample = 30.0 / (180.0 * 1.0 * std::log2(60.0));
  p.estimator.c_ball = 1e-9;
  REQUIRE(p.sample_size_for(60) == 30);
  const auto out = carve_once(h.metric, h.strong, h.weak, p, 19.0, 5);
  CHECK(out.status == CarveStatus::kAbortTooManyCenters);
  CHECK(out.centers.size() == 1);
  std::size_t assigned = 0;
  for (auto a : out.assignment)
    if (a != CarveOutcome::kUnassigned) ++assigned;
  CHECK(assigned == 20);  // exactly the carved cluster
}

TEST_CASE("small live sets finish with exact queries") {
  KCenterWSParams p;
  p.k = 2;
  p.c_sample = 1.0;  // sample_size far above n, immediate strong finish
  p.estimator.c_ball = 1e-9;

  Harness ok(line_metric(ramp(10)), 0.0, 1);
  const auto good = carve_once(ok.metric, ok.strong, ok.weak, p, 2.5, 3);
  CHECK(good.status == CarveStatus::kCompleted);
  CHECK(good.centers.size() <= 2);
  CHECK(ok.ledger.strong_raw() == 45);  // C(10,2)
  CHECK(ok.ledger.weak_raw() == 0);
  for (std::size_t x = 0; x < 10; ++x) {
    REQUIRE(good.assignment[x] < good.centers.size());
    CHECK(ok.metric.distance(static_cast<PointId>(x),
                             good.centers[good.assignment[x]].center) <= 5.0);
  }

  Harness bad(line_metric(ramp(10)), 0.0, 1);
  const auto infeasible = carve_once(bad.metric, bad.strong, bad.weak, p, 0.4, 3);
  CHECK(infeasible.status == CarveStatus::kAbortSmallsetInfeasible);
  CHECK(infeasible.centers.size() == 2);
  CHECK(bad.ledger.strong_raw() == 45);
}

TEST_CASE("carve parameter validation") {
  Harness h(line_metric(ramp(10)), 0.0, 1);
  KCenterWSParams p;
  p.k = 0;
  CHECK_THROWS_AS(carve_once(h.metric, h.strong, h.weak, p, 1.0, 1), std::invalid_argument);
  p.k = 2;
  p.c_sample = 1e-12;  // sample_size = k+1 = 3 below the default ball threshold
  CHECK_THROWS_AS(carve_once(h.metric, h.strong, h.weak, p, 1.0, 1), std::invalid_argument);
  p.c_sample = 1.0;
  p.epsilon = 0.0;
  CHECK_THROWS_AS(kcenter_weak_strong(h.metric, h.strong, h.weak, p), std::invalid_argument);
}

TEST_CASE("degenerate metric is rejected by the radius search") {
  Harness h(line_metric({3, 3, 3, 3, 3}), 0.0, 1);
  KCenterWSParams p;
  p.k = 1;
  CHECK_THROWS_AS(kcenter_weak_strong(h.metric, h.strong, h.weak, p), std::runtime_error);
}

TEST_CASE("pure-success bisection probes exactly ceil(log2 g) radii") {
  // k = n forces the strong-finish path at every radius, so every probe
  // completes and the search walks straight down to the bottom of the grid
  const auto data = generate_sbm({80, 2, 0, 1000.0, 31});
  Harness h(TrueMetric::euclidean(data), 0.0, 4);
  KCenterWSParams p;
  p.k = 80;
  p.seed = 17;
  const auto res = kcenter_weak_strong(h.metric, h.strong, h.weak, p);

  // replicate the grid: the bounds sample covers all n points here
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < 80; ++i)
    for (std::size_t j = i + 1; j < 80; ++j) {
      const double d = h.metric.distance(static_cast<PointId>(i), static_cast<PointId>(j));
      if (d > 0.0) lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  std::vector<double> grid;
  for (double r = lo; r < hi; r *= 1.0 + p.epsilon) grid.push_back(r);
  grid.push_back(hi);

  CHECK(res.feasible);
  CHECK(res.status == CarveStatus::kCompleted);
  CHECK(res.found_rad == grid[0]);
  CHECK(res.carve_calls == ceil_log2(grid.size()));
  CHECK(res.true_radius <= 2.0 * grid[0] + 1e-12);
}

TEST_CASE("binary and linear search agree when completion is monotone") {
  // companion balls of 30 make the peel medians effectively noise-free at
  // delta=0.1, so completion flips once along the grid for almost every seed
  const std::size_t n = 600;
  const double c_sample = 90.0 / (180.0 * 3.0 * std::log2(double(n)));
  const double c_ball = 30.0 / (180.0 * std::log2(double(n)));
  std::size_t monotone = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto data = generate_sbm({n, 3, 0, 1000.0, 500 + seed});
    KCenterWSParams p;
    p.k = 3;
    p.epsilon = 0.3;
    p.c_sample = c_sample;
    p.estimator.c_ball = c_ball;
    p.seed = seed;
    REQUIRE(p.sample_size_for(n) == 90);
    REQUIRE(p.ball_threshold_for(n) == 30);

    // replicate the radius grid the search will use
    const auto metric = TrueMetric::euclidean(data);
    const std::size_t m = std::min(n, 2 * p.sample_size_for(n));
    Rng bounds_rng(mix64(p.seed, 0xb0bULL));
    const auto pick = bounds_rng.sample_without_replacement(static_cast<std::uint32_t>(n),
                                                            static_cast<std::uint32_t>(m));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const double d = metric.distance(pick[i], pick[j]);
        if (d > 0.0) lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    std::vector<double> grid;
    for (double r = lo; r < hi; r *= 1.0 + p.epsilon) grid.push_back(r);
    grid.push_back(hi);

    // probe every radius directly with the carve seeds the search derives
    std::vector<char> completed(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Harness probe(TrueMetric::euclidean(data), 0.1, p.seed);
      completed[i] = carve_once(probe.metric, probe.strong, probe.weak, p, grid[i],
                                mix64(p.seed, 1000 + i))
                         .status == CarveStatus::kCompleted;
    }
    bool mono = true;
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (completed[i - 1] && !completed[i]) mono = false;
    if (!mono) continue;
    ++monotone;

    Harness hb(TrueMetric::euclidean(data), 0.1, p.seed);
    const auto bin = kcenter_weak_strong(hb.metric, hb.strong, hb.weak, p);
    p.binary_search = false;
    Harness hl(TrueMetric::euclidean(data), 0.1, p.seed);
    const auto lin = kcenter_weak_strong(hl.metric, hl.strong, hl.weak, p);
    CHECK(bin.found_rad == lin.found_rad);
    CHECK(bin.feasible == lin.feasible);
    const auto first =
        std::find(completed.begin(), completed.end(), char(1)) - completed.begin();
    if (static_cast<std::size_t>(first) < grid.size()) {
      CHECK(bin.feasible);
      CHECK(bin.found_rad == grid[first]);
    }
    CHECK(bin.carve_calls <= ceil_log2(grid.size()) + 1);
  }
  CHECK(monotone >= 9);
}

TEST_CASE("weak-strong k-center lands inside the planted clusters") {
  const auto data = generate_sbm({120, 3, 0, 1e5, 77});
  Harness h(TrueMetric::euclidean(data), 0.05, 13);
  KCenterWSParams p;
  p.k = 3;
  p.c_sample = 30.0 / (180.0 * 3.0 * std::log2(120.0));
  p.estimator.c_ball = 8.0 / (180.0 * std::log2(120.0));
  p.seed = 21;
  const auto res = kcenter_weak_strong(h.metric, h.strong, h.weak, p);
  REQUIRE(res.feasible);
  CHECK(res.centers.size() <= 3);
  for (std::size_t x = 0; x < 120; ++x) REQUIRE(res.assignment[x] < res.centers.size());
  // a correct clustering stays at intra-cluster scale, far below the 1e5 gap
  CHECK(res.true_radius < 1e3);
  CHECK(res.strong_raw >= res.strong_distinct);
}

TEST_CASE("exact greedy carve completes at the optimal radius") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.below(9);
    const std::size_t k = 1 + rng.below(3);
    Dataset d;
    d.dim = 2;
    d.n = n;
    for (std::size_t i = 0; i < 2 * n; ++i) d.coords.push_back(rng.u01() * 100.0);
    const auto m = TrueMetric::euclidean(std::move(d));
    const double r_opt = exact_solve(m, k, Objective::kCenter).cost;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      QueryLedger ledger(m.size());
      StrongOracle strong(m, ledger);
      const auto res = greedy_carve_exact(m, strong, k, r_opt, seed);
      CHECK(res.completed);
      CHECK(res.centers.size() <= k);
      CHECK(res.true_radius <= 2.0 * r_opt + 1e-9);
      for (std::size_t x = 0; x < n; ++x) REQUIRE(res.assignment[x] < res.centers.size());
    }
  }
}

TEST_CASE("exact greedy carve aborts below the optimal radius") {
  const auto m = line_metric({0.0, 10.0});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  const auto res = greedy_carve_exact(m, strong, 1, 2.0, 0);
  CHECK_FALSE(res.completed);
  CHECK(res.centers.size() == 1);
  CHECK_THROWS_AS(greedy_carve_exact(m, strong, 0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("farthest-point traversal trace on a line") {
  const auto m = line_metric(ramp(10));
  bool traced = false;
  for (std::uint64_t seed = 0; seed < 60 && !traced; ++seed) {
    QueryLedger ledger(m.size());
    StrongOracle strong(m, ledger);
    const auto res = gonzalez_baseline(m, strong, 2, seed);
    CHECK(ledger.strong_raw() == 20);  // n*k always
    if (res.centers[0] != 0) continue;
    traced = true;
    CHECK(res.centers[1] == 9);
    CHECK(res.true_radius == doctest::Approx(4.0));
    for (std::size_t x = 0; x <= 4; ++x) CHECK(res.assignment[x] == 0);
    for (std::size_t x = 5; x <= 9; ++x) CHECK(res.assignment[x] == 1);
  }
  REQUIRE(traced);
}

TEST_CASE("farthest-point traversal edge cases") {
  const auto m = line_metric(ramp(6));
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  const auto one = gonzalez_baseline(m, strong, 1, 3);
  CHECK(one.centers.size() == 1);
  const double far = std::max(m.distance(0, one.centers[0]), m.distance(5, one.centers[0]));
  CHECK(one.true_radius == doctest::Approx(far));
  CHECK_THROWS_AS(gonzalez_baseline(m, strong, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gonzalez_baseline(m, strong, 7, 1), std::invalid_argument);

  // the traversal also runs against a weak oracle; only the evaluation is exact
  const auto data = generate_sbm({60, 2, 0, 1e4, 5});
  Harness h(TrueMetric::euclidean(data), 0.3, 9);
  const auto res = gonzalez_baseline(h.metric, h.weak, 2, 11);
  CHECK(h.ledger.weak_raw() == 120);
  CHECK(h.ledger.strong_raw() == 0);
  CHECK(res.true_radius > 0.0);
}
