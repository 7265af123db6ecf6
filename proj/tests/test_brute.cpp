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

}  // namespace

TEST_CASE("objective names") {
  CHECK(to_string(Objective::kMeans) == "kmeans");
  CHECK(to_string(Objective::kCenter) == "kcenter");
  CHECK(to_string(Objective::kMedian) == "kmedian");
}

TEST_CASE("two separated pairs") {
  const auto m = line_metric({0, 1, 10, 11});
  const auto means = exact_solve(m, 2, Objective::kMeans);
  CHECK(means.cost == doctest::Approx(2.0));  // 1^2 + 1^2
  REQUIRE(means.centers.size() == 2);
  CHECK(means.centers[0] <= 1);
  CHECK(means.centers[1] >= 2);

  const auto center = exact_solve(m, 2, Objective::kCenter);
  CHECK(center.cost == doctest::Approx(1.0));
  const auto median = exact_solve(m, 2, Objective::kMedian);
  CHECK(median.cost == doctest::Approx(2.0));
}

TEST_CASE("k equal to n is free") {
  const auto m = line_metric({3, 7, 20, 21, -5, 0, 0, 2, 9, 14, 15, 16, 30, 31, 32, 33});
  for (auto obj : {Objective::kMeans, Objective::kCenter, Objective::kMedian}) {
    const auto res = exact_solve(m, 4, obj);
    CHECK(res.cost >= 0.0);
  }
  const auto tiny = line_metric({5, 6});
  for (auto obj : {Objective::kMeans, Objective::kCenter, Objective::kMedian})
    CHECK(exact_solve(tiny, 2, obj).cost == 0.0);
}

TEST_CASE("two-level instance optimum") {
  // 12 points in 3 groups: picking one center per group costs 1 per
  // non-center point under the median objective
  const auto m = generate_hard_instance({12, 3, 100.0, 0});
  const auto res = exact_solve(m, 3, Objective::kMedian);
  CHECK(res.cost == doctest::Approx(9.0));
  const auto& lab = *m.labels();
  std::vector<int> seen;
  for (PointId c : res.centers) seen.push_back(lab[c]);
  CHECK(seen == std::vector<int>{0, 1, 2});  // one center per group, smallest ids

  CHECK(exact_solve(m, 3, Objective::kCenter).cost == doctest::Approx(1.0));
  CHECK(exact_solve(m, 3, Objective::kMeans).cost == doctest::Approx(9.0));
}

TEST_CASE("ties prefer the lexicographically smallest center set") {
  const auto m = line_metric({0, 0, 0, 0});
  const auto res = exact_solve(m, 2, Objective::kMeans);
  CHECK(res.centers == std::vector<PointId>{0, 1});
}

TEST_CASE("budget guard") {
  const auto m = line_metric({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  CHECK(exact_solve(m, 4, Objective::kCenter).cost > 0.0);  // n=16, k=4 allowed
  CHECK_THROWS_AS(exact_solve(m, 5, Objective::kCenter), std::invalid_argument);
  std::vector<double> xs(17);
  for (std::size_t i = 0; i < 17; ++i) xs[i] = static_cast<double>(i);
  const auto big = line_metric(std::move(xs));
  CHECK_THROWS_AS(exact_solve(big, 2, Objective::kCenter), std::invalid_argument);
  CHECK_THROWS_AS(exact_solve(m, 0, Objective::kCenter), std::invalid_argument);
}

TEST_CASE("greedy traversal sits within twice the exact radius") {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5 + rng.below(10);
    const std::size_t k = 1 + rng.below(3);
    Dataset d;
    d.dim = 2;
    d.n = n;
    for (std::size_t i = 0; i < 2 * n; ++i) d.coords.push_back(rng.u01() * 50.0);
    const auto m = TrueMetric::euclidean(std::move(d));
    const double r_opt = exact_solve(m, k, Objective::kCenter).cost;
    QueryLedger ledger(m.size());
    StrongOracle strong(m, ledger);
    const auto g = gonzalez_baseline(m, strong, k, rng.word());
    CHECK(r_opt <= g.true_radius + 1e-12);
    CHECK(g.true_radius <= 2.0 * r_opt + 1e-9);
  }
}
