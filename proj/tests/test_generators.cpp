#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "oraclust/generators.hpp"
#include "oraclust/metric.hpp"

using namespace oraclust;

TEST_CASE("gaussian blobs: labels, sizes, reproducibility") {
  const auto data = generate_sbm({10, 3, 0, 100.0, 5});
  CHECK(data.n == 10);
  CHECK(data.dim == 3);  // defaults to k_true
  REQUIRE(data.labels.has_value());
  // 10 = 4 + 3 + 3, contiguous blocks
  const std::vector<int> expect{0, 0, 0, 0, 1, 1, 1, 2, 2, 2};
  CHECK(*data.labels == expect);

  const auto again = generate_sbm({10, 3, 0, 100.0, 5});
  CHECK(again.coords == data.coords);
  const auto other = generate_sbm({10, 3, 0, 100.0, 6});
  CHECK(other.coords != data.coords);

  CHECK_THROWS_AS(generate_sbm({10, 3, 2, 100.0, 1}), std::invalid_argument);  // dim < k_true
  CHECK_THROWS_AS(generate_sbm({0, 1, 0, 100.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_sbm({5, 6, 0, 100.0, 1}), std::invalid_argument);
}

TEST_CASE("gaussian blobs: cluster means sit on the scaled axes") {
  const double scale = 1000.0;
  const auto data = generate_sbm({600, 2, 0, scale, 11});
  std::vector<double> mean0(2, 0.0), mean1(2, 0.0);
  std::size_t n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < data.n; ++i) {
    const double* p = data.point(static_cast<PointId>(i));
    if ((*data.labels)[i] == 0) {
      ++n0;
      for (int d = 0; d < 2; ++d) mean0[d] += p[d];
    } else {
      ++n1;
      for (int d = 0; d < 2; ++d) mean1[d] += p[d];
    }
  }
  REQUIRE(n0 == 300);
  REQUIRE(n1 == 300);
  for (int d = 0; d < 2; ++d) {
    mean0[d] /= 300.0;
    mean1[d] /= 300.0;
  }
  CHECK(std::abs(mean0[0] - scale) < 0.5);
  CHECK(std::abs(mean0[1]) < 0.5);
  CHECK(std::abs(mean1[1] - scale) < 0.5);
  const double sep = std::hypot(mean0[0] - mean1[0], mean0[1] - mean1[1]);
  CHECK(std::abs(sep - scale * std::sqrt(2.0)) < 1.0);
}

TEST_CASE("gaussian blobs: zero scale collapses to one blob") {
  const auto data = generate_sbm({600, 3, 0, 0.0, 2});
  double worst = 0.0;
  for (double c : data.coords) worst = std::max(worst, std::abs(c));
  CHECK(worst < 6.0);  // pure N(0,1) noise
  CHECK(data.labels->size() == 600);
}

TEST_CASE("two-level instance distances") {
  const auto m = generate_hard_instance({12, 3, 100.0, 0});
  REQUIRE(m.size() == 12);
  REQUIRE(m.labels().has_value());
  const auto& lab = *m.labels();
  for (PointId i = 0; i < 12; ++i) {
    CHECK(m.distance(i, i) == 0.0);
    for (PointId j = 0; j < 12; ++j) {
      if (i == j) continue;
      CHECK(m.distance(i, j) == (lab[i] == lab[j] ? 1.0 : 100.0));
    }
  }
  std::vector<int> sizes(3, 0);
  for (int l : lab) ++sizes[l];
  CHECK(sizes == std::vector<int>{4, 4, 4});
}

TEST_CASE("two-level instance separation defaults") {
  // default separation is max(2, n - k_true)
  const auto wide = generate_hard_instance({10, 3, 0.0, 0});
  CHECK(wide.distance(0, 9) == 7.0);
  const auto tight = generate_hard_instance({3, 2, 0.0, 0});
  CHECK(tight.distance(0, 2) == 2.0);

  CHECK_THROWS_AS(generate_hard_instance({12, 3, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_hard_instance({12, 3, 0.5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_hard_instance({1, 1, 0.0, 0}), std::invalid_argument);
}

TEST_CASE("materialized weak matrix: exact at delta zero") {
  const auto m = generate_hard_instance({10, 2, 9.0, 0});
  const auto weak = build_experiment_weak_matrix(m, 0.0, 7);
  for (PointId i = 0; i < 10; ++i)
    for (PointId j = i + 1; j < 10; ++j) CHECK(weak->at(i, j) == m.distance(i, j));
}

TEST_CASE("materialized weak matrix: flip rate and flip values") {
  const auto m = generate_hard_instance({500, 2, 0.0, 0});  // separation 498
  const auto& lab = *m.labels();
  const auto weak = build_experiment_weak_matrix(m, 0.3, 41);
  std::size_t pairs = 0, flipped = 0;
  for (PointId i = 0; i < 500; ++i)
    for (PointId j = i + 1; j < 500; ++j) {
      ++pairs;
      const double v = weak->at(i, j);
      const double truth = m.distance(i, j);
      if (v == truth) continue;
      ++flipped;
      // a flipped answer is always a true distance of the opposite relation
      if (lab[i] == lab[j])
        CHECK(v == 498.0);
      else
        CHECK(v == 1.0);
    }
  const double rate = static_cast<double>(flipped) / static_cast<double>(pairs);
  CHECK(pairs == 124750);
  CHECK(rate > 0.28);
  CHECK(rate < 0.32);
}

TEST_CASE("materialized weak matrix: every entry flips at delta one") {
  const auto m = generate_hard_instance({8, 2, 5.0, 0});
  const auto& lab = *m.labels();
  const auto weak = build_experiment_weak_matrix(m, 1.0, 3);
  for (PointId i = 0; i < 8; ++i)
    for (PointId j = i + 1; j < 8; ++j)
      CHECK(weak->at(i, j) == (lab[i] == lab[j] ? 5.0 : 1.0));
}

TEST_CASE("materialized weak matrix: swapped values come from the true pools") {
  const auto data = generate_sbm({40, 2, 0, 1e4, 9});
  const auto m = TrueMetric::euclidean(data);
  const auto& lab = *m.labels();
  std::set<double> intra, inter;
  for (PointId i = 0; i < 40; ++i)
    for (PointId j = i + 1; j < 40; ++j)
      (lab[i] == lab[j] ? intra : inter).insert(m.distance(i, j));
  const auto weak = build_experiment_weak_matrix(m, 0.5, 13);
  std::size_t flipped = 0;
  for (PointId i = 0; i < 40; ++i)
    for (PointId j = i + 1; j < 40; ++j) {
      const double v = weak->at(i, j);
      if (v == m.distance(i, j)) continue;
      ++flipped;
      if (lab[i] == lab[j])
        CHECK(inter.count(v) == 1);
      else
        CHECK(intra.count(v) == 1);
    }
  CHECK(flipped > 200);  // about half of 780 pairs
}

TEST_CASE("materialized weak matrix: input validation") {
  const auto single = generate_hard_instance({6, 1, 3.0, 0});
  CHECK_THROWS_AS(build_experiment_weak_matrix(single, 0.2, 1), std::invalid_argument);

  Dataset plain;  // no labels at all
  plain.n = 4;
  plain.dim = 1;
  plain.coords = {0, 1, 2, 3};
  const auto unlabeled = TrueMetric::euclidean(std::move(plain));
  CHECK_THROWS_AS(build_experiment_weak_matrix(unlabeled, 0.2, 1), std::invalid_argument);

  const auto m = generate_hard_instance({6, 2, 3.0, 0});
  CHECK_THROWS_AS(build_experiment_weak_matrix(m, 1.5, 1), std::invalid_argument);

  Dataset big;
  big.n = 16385;
  big.dim = 1;
  big.coords.assign(16385, 0.0);
  std::vector<int> lab(16385);
  for (std::size_t i = 0; i < lab.size(); ++i) lab[i] = static_cast<int>(i % 2);
  big.labels = std::move(lab);
  const auto too_big = TrueMetric::euclidean(std::move(big));
  CHECK_THROWS_AS(build_experiment_weak_matrix(too_big, 0.1, 1), std::invalid_argument);
}
