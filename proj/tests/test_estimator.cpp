#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oraclust/estimator.hpp"
#include "oraclust/generators.hpp"
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

// weak oracle whose answers are dictated verbatim through a matrix
struct Scripted {
  TrueMetric metric;
  std::shared_ptr<SymMatrix> answers;
  QueryLedger ledger;
  Scripted(TrueMetric m, SymMatrix a)
      : metric(std::move(m)),
        answers(std::make_shared<SymMatrix>(std::move(a))),
        ledger(metric.size()) {}
  WeakOracle oracle() { return WeakOracle(metric, answers, ledger); }
};

}  // namespace

TEST_CASE("ball size formula") {
  EstimatorParams p;  // c_ball 0.05, log2
  CHECK(p.ball_size_for(1024) == 90);  // 0.05 * 180 * 10
  CHECK(p.ball_size_for(4) == 4);      // clamped to n
  p.c_ball = 1e-6;
  CHECK(p.ball_size_for(1024) == 3);  // floor of 3
  p.c_ball = 1.0;
  p.log_base = LogBase::kE;
  CHECK(p.ball_size_for(1024) == std::min<std::size_t>(1024, std::llround(180 * std::log(1024.0))));
}

TEST_CASE("point estimate takes the lower median") {
  // x = point 0; ball members 1..5 with scripted answers {1,2,100,2,3}
  const auto n = 6;
  SymMatrix answers(n, std::vector<double>(15, 0.0));
  answers.set(0, 1, 1.0);
  answers.set(0, 2, 2.0);
  answers.set(0, 3, 100.0);
  answers.set(0, 4, 2.0);
  answers.set(0, 5, 3.0);
  Scripted s(line_metric({0, 1, 2, 3, 4, 5}), answers);
  auto weak = s.oracle();
  BallSpec ball{1, 4.0, {1, 2, 3, 4, 5}};
  CHECK(point_to_point_estimate(weak, 0, ball) == 2.0);  // sorted {1,2,2,3,100}
  CHECK(s.ledger.weak_raw() == 5);

  BallSpec even{1, 4.0, {1, 2, 3, 4}};  // {1,2,100,2} -> sorted {1,2,2,100}, lower median 2
  CHECK(point_to_point_estimate(weak, 0, even) == 2.0);
  BallSpec empty{1, 0.0, {}};
  CHECK_THROWS_AS(point_to_point_estimate(weak, 0, empty), std::invalid_argument);
}

TEST_CASE("median of constant answers") {
  const auto m = line_metric({0, 4, 4, 4, 4, 4});
  QueryLedger ledger(m.size());
  WeakOracle weak(m, {0.0, CorruptionMode::kUniformRange, 0}, ledger);
  BallSpec ball{1, 0.0, {1, 2, 3, 4, 5}};
  CHECK(point_to_point_estimate(weak, 0, ball) == 4.0);
}

TEST_CASE("median concentration under heavy corruption") {
  // 1800 companions all at true distance 10 from x; corrupted answers land
  // anywhere in the distance range, the clean 2/3 majority pins the median
  const std::size_t members = 1800;
  Dataset d;
  d.dim = 2;
  d.n = members + 1;
  d.coords.assign(2 * (members + 1), 0.0);
  Rng layout(7);
  for (std::size_t i = 1; i <= members; ++i) {
    const double ang = layout.u01() * 6.283185307179586;
    d.coords[2 * i] = 10.0 * std::cos(ang);
    d.coords[2 * i + 1] = 10.0 * std::sin(ang);
  }
  const auto m = TrueMetric::euclidean(std::move(d));
  BallSpec ball{1, 0.0, {}};
  for (std::size_t i = 1; i <= members; ++i) ball.members.push_back(static_cast<PointId>(i));

  std::size_t ok = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    QueryLedger ledger(m.size());
    WeakOracle weak(m, {1.0 / 3.0, CorruptionMode::kUniformRange, 1000 + (std::uint64_t)t}, ledger);
    const double est = point_to_point_estimate(weak, 0, ball);
    if (est >= 9.0 && est <= 11.0) ++ok;
  }
  CHECK(ok >= 999);
}

TEST_CASE("center state balls and counting") {
  // 1-D centers 0..9, ball_size 3
  const auto m = line_metric({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  CenterState state(m.size(), 3);
  std::vector<PointId> centers{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  state.initialize(centers, strong);
  CHECK(ledger.strong_raw() == 45);  // C(10,2)
  CHECK(state.center_count() == 10);

  // entry 0: distances {0,1,...,9}, third smallest (self included) is 2
  CHECK(state.radius(0) == 2.0);
  const auto b0 = state.ball(0);
  CHECK(b0.members == std::vector<PointId>{0, 1, 2});
  // entry 5: {0,1,1,...} -> radius 1, members {4,5,6}
  CHECK(state.radius(5) == 1.0);
  CHECK(state.ball(5).members == std::vector<PointId>{4, 5, 6});
}

TEST_CASE("add_center issues one strong query per existing center") {
  const auto m = line_metric({0, 1, 2, 3, 4, 5, 10});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  CenterState state(m.size(), 3);
  state.initialize({0, 1, 2, 3, 4}, strong);
  const auto before = ledger.strong_raw();
  CHECK(before == 10);  // C(5,2)
  refresh_balls(state, strong, 6);
  CHECK(ledger.strong_raw() == before + 5);
  CHECK(state.center_count() == 6);
  // duplicates are legal: multiset semantics
  state.add_center(6, strong);
  CHECK(state.center_count() == 7);
  CHECK(ledger.strong_raw() == before + 5 + 6);
}

TEST_CASE("colocated centers give zero radii") {
  const auto m = line_metric({5, 5, 5, 5});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  CenterState state(m.size(), 3);
  state.initialize({0, 1, 2, 3}, strong);
  for (std::uint32_t e = 0; e < 4; ++e) CHECK(state.radius(e) == 0.0);
}

TEST_CASE("set estimate at a duplicated center is zero") {
  // three copies of location 7 plus outliers; x is another copy of 7
  const auto m = line_metric({7, 7, 7, 100, 200, 7});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  WeakOracle weak(m, {0.0, CorruptionMode::kUniformRange, 0}, ledger);
  CenterState state(m.size(), 3);
  state.initialize({0, 1, 2, 3, 4}, strong);
  CHECK(state.radius(0) == 0.0);
  const auto se = state.estimate_to_set(weak, 5);
  CHECK(se.value == 0.0);
  CHECK(se.entry == 0);  // earliest entry wins the tie among the copies
  CHECK(se.center == 0);
}

TEST_CASE("estimate respects the delta-zero sandwich") {
  const auto data = generate_sbm({120, 3, 0, 1000.0, 3});
  const auto m = TrueMetric::euclidean(data);
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  WeakOracle weak(m, {0.0, CorruptionMode::kUniformRange, 0}, ledger);
  EstimatorParams p;
  p.c_ball = 0.005;  // small balls
  const auto ball = p.ball_size_for(m.size());
  CenterState state(m.size(), ball);
  Rng rng(17);
  const auto init = rng.sample_without_replacement(120, 20);
  state.initialize({init.begin(), init.end()}, strong);
  double max_r = 0.0;
  for (std::uint32_t e = 0; e < state.center_count(); ++e) max_r = std::max(max_r, state.radius(e));
  for (PointId x = 0; x < 120; ++x) {
    double true_min = 1e300;
    for (auto c : state.centers()) true_min = std::min(true_min, m.distance(x, c));
    const auto se = state.estimate_to_set(weak, x);
    CHECK(se.value >= true_min - 1e-9);
    CHECK(se.value <= true_min + 2.0 * max_r + 1e-9);
  }
}

TEST_CASE("estimate cache matches a fresh recompute") {
  const auto data = generate_sbm({80, 2, 0, 100.0, 5});
  const auto m = TrueMetric::euclidean(data);
  QueryLedger l1(m.size()), l2(m.size());
  StrongOracle s1(m, l1), s2(m, l2);
  WeakOracle w1(m, {0.3, CorruptionMode::kUniformRange, 33}, l1);
  WeakOracle w2(m, {0.3, CorruptionMode::kUniformRange, 33}, l2);

  CenterState incremental(m.size(), 4);
  incremental.initialize({0, 1, 2, 3, 4}, s1);
  std::vector<PointId> added{10, 20, 30, 40, 50};
  for (PointId p : added) {
    incremental.add_center(p, s1);
    for (PointId x = 0; x < 80; ++x) incremental.estimate_to_set(w1, x);  // touch the cache
  }

  CenterState scratch(m.size(), 4);
  scratch.initialize({0, 1, 2, 3, 4}, s2);
  for (PointId p : added) scratch.add_center(p, s2);

  for (PointId x = 0; x < 80; ++x) {
    const auto a = incremental.estimate_to_set(w1, x);
    const auto b = scratch.estimate_to_set(w2, x);
    CHECK(a.value == b.value);
    CHECK(a.entry == b.entry);
  }
}

TEST_CASE("zero radii make the estimate exactly the true distance") {
  // clusters of three colocated points; every ball collapses to radius zero
  const auto m = line_metric({0, 0, 0, 50, 50, 50, 90, 90, 90, 17, 63});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  WeakOracle weak(m, {0.0, CorruptionMode::kUniformRange, 0}, ledger);
  CenterState state(m.size(), 3);
  state.initialize({0, 1, 2, 3, 4, 5, 6, 7, 8}, strong);
  for (std::uint32_t e = 0; e < 9; ++e) CHECK(state.radius(e) == 0.0);
  for (PointId x : {9, 10}) {
    double true_min = 1e300;
    for (auto c : state.centers()) true_min = std::min(true_min, m.distance(x, c));
    CHECK(state.estimate_to_set(weak, x).value == true_min);
  }
}

TEST_CASE("state preconditions") {
  const auto m = line_metric({0, 1, 2, 3});
  QueryLedger ledger(m.size());
  StrongOracle strong(m, ledger);
  WeakOracle weak(m, {0.0, CorruptionMode::kUniformRange, 0}, ledger);
  CenterState state(m.size(), 3);
  CHECK_THROWS_AS(state.initialize({0, 1}, strong), std::invalid_argument);
  CHECK_THROWS_AS(state.add_center(0, strong), std::logic_error);
  CHECK_THROWS_AS(CenterState(4, 0), std::invalid_argument);
}

TEST_CASE("sampling distribution") {
  const auto p = build_sampling_distribution({3.0, 4.0});
  CHECK(p[0] == doctest::Approx(9.0 / 25.0));
  CHECK(p[1] == doctest::Approx(16.0 / 25.0));

  const auto u = build_sampling_distribution({0.0, 0.0, 0.0});
  for (double v : u) CHECK(v == doctest::Approx(1.0 / 3.0));

  const auto s = build_sampling_distribution({0.0, 0.0, 5.0});
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == doctest::Approx(1.0));

  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> est;
    const auto len = 1 + rng.below(40);
    for (std::uint64_t i = 0; i < len; ++i) est.push_back(rng.u01() * 10.0);
    const auto probs = build_sampling_distribution(est);
    double total = 0.0;
    for (double v : probs) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(build_sampling_distribution({}), std::invalid_argument);
  CHECK_THROWS_AS(build_sampling_distribution({-1.0}), std::invalid_argument);
}
