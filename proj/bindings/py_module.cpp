#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oraclust/brute.hpp"
#include "oraclust/generators.hpp"
#include "oraclust/harness.hpp"
#include "oraclust/kcenter.hpp"
#include "oraclust/kmeans.hpp"
#include "oraclust/metric.hpp"
#include "oraclust/oracle.hpp"

namespace py = pybind11;
using namespace oraclust;

namespace {

CorruptionMode corruption_from(const std::string& s) {
  if (s == "uniform-range") return CorruptionMode::kUniformRange;
  if (s == "label-swap") return CorruptionMode::kLabelSwap;
  throw std::invalid_argument("unknown corruption mode: " + s);
}

Objective objective_from(const std::string& s) {
  if (s == "kmeans") return Objective::kMeans;
  if (s == "kcenter") return Objective::kCenter;
  if (s == "kmedian") return Objective::kMedian;
  throw std::invalid_argument("unknown objective: " + s);
}

TrueMetric metric_from_points(const std::vector<std::vector<double>>& points,
                              const std::optional<std::vector<int>>& labels) {
  if (points.empty()) throw std::invalid_argument("points must be non-empty");
  Dataset d;
  d.n = points.size();
  d.dim = points.front().size();
  if (d.dim == 0) throw std::invalid_argument("points must have at least one coordinate");
  d.coords.reserve(d.n * d.dim);
  for (const auto& row : points) {
    if (row.size() != d.dim) throw std::invalid_argument("ragged point list");
    d.coords.insert(d.coords.end(), row.begin(), row.end());
  }
  if (labels) {
    if (labels->size() != d.n) throw std::invalid_argument("labels length mismatch");
    d.labels = *labels;
  }
  return TrueMetric::euclidean(std::move(d));
}

// A metric plus its two metered oracles; every algorithm call shares one
// query ledger so Python callers can read the running totals.
class Bench {
 public:
  Bench(TrueMetric metric, double delta, const std::string& corruption,
        std::uint64_t oracle_seed)
      : metric_(std::move(metric)),
        ledger_(metric_.size()),
        strong_(metric_, ledger_),
        weak_(metric_, WeakOracleConfig{delta, corruption_from(corruption), oracle_seed},
              ledger_) {}

  Bench(const Bench&) = delete;
  Bench& operator=(const Bench&) = delete;

  std::size_t size() const { return metric_.size(); }

  double distance(PointId a, PointId b) const {
    check_point(a);
    check_point(b);
    return metric_.distance(a, b);
  }

  std::optional<std::vector<int>> labels() const { return metric_.labels(); }

  py::dict counters() const {
    py::dict d;
    d["strong_raw"] = ledger_.strong_raw();
    d["strong_distinct"] = ledger_.strong_distinct();
    d["weak_raw"] = ledger_.weak_raw();
    d["weak_distinct"] = ledger_.weak_distinct();
    return d;
  }

  py::dict kmeans(std::size_t k, std::optional<std::size_t> t, std::optional<std::size_t> init,
                  double epsilon, double c_ball, double c_iter, std::uint64_t seed,
                  std::uint64_t budget) {
    KMeansWSParams p;
    p.k = k;
    p.epsilon = epsilon;
    p.c_iter = c_iter;
    p.estimator.c_ball = c_ball;
    p.t_override = t;
    p.init_count = init;
    p.seed = seed;
    p.strong_budget = budget;
    auto [inst, res] = kmeans_weak_strong(metric_, strong_, weak_, p);
    const auto solved = solve_weighted(inst, k, seed);
    py::dict d;
    d["candidates"] = inst.candidates;
    d["weights"] = inst.weights;
    d["assignment"] = res.assignment;
    d["bi_criteria_cost"] = res.true_cost;
    d["est_cost"] = res.est_cost;
    d["aborted"] = res.aborted;
    d["centers"] = solved.centers;
    d["final_cost"] = evaluate_cost(metric_, solved.centers);
    d["strong_raw"] = res.strong_raw;
    d["strong_distinct"] = res.strong_distinct;
    d["weak_raw"] = res.weak_raw;
    d["weak_distinct"] = res.weak_distinct;
    return d;
  }

  py::dict kmeans_baseline(std::size_t k, std::optional<std::size_t> rounds, std::uint64_t seed,
                           bool use_weak) {
    DistanceOracle& oracle = use_weak ? static_cast<DistanceOracle&>(weak_) : strong_;
    const auto res = dsq_sampling_baseline(metric_, oracle, rounds.value_or(k), seed);
    py::dict d;
    d["centers"] = res.centers;
    d["true_cost"] = res.true_cost;
    return d;
  }

  py::dict kcenter(std::size_t k, double epsilon, double c_sample, double c_ball,
                   std::uint64_t seed, bool binary_search) {
    KCenterWSParams p;
    p.k = k;
    p.epsilon = epsilon;
    p.c_sample = c_sample;
    p.estimator.c_ball = c_ball;
    p.seed = seed;
    p.binary_search = binary_search;
    const auto res = kcenter_weak_strong(metric_, strong_, weak_, p);
    py::dict d;
    d["status"] = to_string(res.status);
    d["feasible"] = res.feasible;
    d["found_rad"] = res.found_rad;
    d["true_radius"] = res.true_radius;
    std::vector<PointId> centers;
    for (const auto& c : res.centers) centers.push_back(c.center);
    d["centers"] = centers;
    d["assignment"] = res.assignment;
    d["carve_calls"] = res.carve_calls;
    d["strong_raw"] = res.strong_raw;
    d["strong_distinct"] = res.strong_distinct;
    d["weak_raw"] = res.weak_raw;
    d["weak_distinct"] = res.weak_distinct;
    return d;
  }

  py::dict gonzalez(std::size_t k, std::uint64_t seed, bool use_weak) {
    DistanceOracle& oracle = use_weak ? static_cast<DistanceOracle&>(weak_) : strong_;
    const auto res = gonzalez_baseline(metric_, oracle, k, seed);
    py::dict d;
    d["centers"] = res.centers;
    d["assignment"] = res.assignment;
    d["true_radius"] = res.true_radius;
    return d;
  }

  py::dict greedy_carve(std::size_t k, double rad, std::uint64_t seed) {
    const auto res = greedy_carve_exact(metric_, strong_, k, rad, seed);
    py::dict d;
    d["completed"] = res.completed;
    d["centers"] = res.centers;
    d["assignment"] = res.assignment;
    d["true_radius"] = res.true_radius;
    return d;
  }

  py::dict exact(std::size_t k, const std::string& objective) {
    const auto res = exact_solve(metric_, k, objective_from(objective));
    py::dict d;
    d["centers"] = res.centers;
    d["cost"] = res.cost;
    return d;
  }

  double kmeans_cost(const std::vector<PointId>& centers) {
    for (const auto c : centers) check_point(c);
    return evaluate_cost(metric_, centers);
  }

 private:
  void check_point(PointId p) const {
    if (p >= metric_.size()) throw std::out_of_range("point id out of range");
  }

  TrueMetric metric_;
  QueryLedger ledger_;
  StrongOracle strong_;
  WeakOracle weak_;
};

}  // namespace

PYBIND11_MODULE(oraclust, m) {
  m.doc() = "clustering with a metered exact oracle and a cheap noisy oracle";

  py::class_<Bench>(m, "Bench",
                    "A point set with one strong (exact, metered) and one weak "
                    "(noisy, persistent) distance oracle sharing a query ledger.")
      .def(py::init([](const std::vector<std::vector<double>>& points,
                       const std::optional<std::vector<int>>& labels, double delta,
                       const std::string& corruption, std::uint64_t oracle_seed) {
             return std::make_unique<Bench>(metric_from_points(points, labels), delta,
                                            corruption, oracle_seed);
           }),
           py::arg("points"), py::arg("labels") = std::nullopt, py::arg("delta") = 0.0,
           py::arg("corruption") = "uniform-range", py::arg("oracle_seed") = 0)
      .def("__len__", &Bench::size)
      .def("distance", &Bench::distance, py::arg("a"), py::arg("b"),
           "True distance, bypassing both oracles and the ledger.")
      .def("labels", &Bench::labels)
      .def("counters", &Bench::counters, "Raw and distinct query totals for both oracles.")
      .def("kmeans", &Bench::kmeans, py::arg("k"), py::arg("t") = std::nullopt,
           py::arg("init") = std::nullopt, py::arg("epsilon") = 0.5, py::arg("c_ball") = 0.05,
           py::arg("c_iter") = 2e-8, py::arg("seed") = 0, py::arg("budget") = 0,
           "Oversampling k-means on the weak oracle plus the weighted final solve.")
      .def("kmeans_baseline", &Bench::kmeans_baseline, py::arg("k"),
           py::arg("rounds") = std::nullopt, py::arg("seed") = 0, py::arg("use_weak") = false,
           "Squared-distance sampling baseline (n*rounds oracle queries).")
      .def("kcenter", &Bench::kcenter, py::arg("k"), py::arg("epsilon") = 0.1,
           py::arg("c_sample") = 0.05, py::arg("c_ball") = 0.05, py::arg("seed") = 0,
           py::arg("binary_search") = true,
           "Ball-carving k-center with a radius grid search.")
      .def("gonzalez", &Bench::gonzalez, py::arg("k"), py::arg("seed") = 0,
           py::arg("use_weak") = false, "Farthest-point traversal (n*k oracle queries).")
      .def("greedy_carve", &Bench::greedy_carve, py::arg("k"), py::arg("rad"),
           py::arg("seed") = 0, "Exact greedy ball carving at a fixed radius.")
      .def("exact", &Bench::exact, py::arg("k"), py::arg("objective") = "kmeans",
           "Exhaustive optimum (n <= 16, k <= 4); objective kmeans|kcenter|kmedian.")
      .def("kmeans_cost", &Bench::kmeans_cost, py::arg("centers"),
           "True k-means cost of a center set (no oracle queries).");

  m.def(
      "sbm_bench",
      [](std::size_t n, std::size_t k_true, std::size_t dim, double scale,
         std::uint64_t dataset_seed, double delta, const std::string& corruption,
         std::uint64_t oracle_seed) {
        return std::make_unique<Bench>(
            TrueMetric::euclidean(generate_sbm({n, k_true, dim, scale, dataset_seed})), delta,
            corruption, oracle_seed);
      },
      py::arg("n"), py::arg("k_true"), py::arg("dim") = 0, py::arg("scale") = 1e5,
      py::arg("dataset_seed") = 1, py::arg("delta") = 0.0,
      py::arg("corruption") = "uniform-range", py::arg("oracle_seed") = 0,
      "Gaussian blobs on scaled coordinate axes, with ground-truth labels.");

  m.def(
      "hard_bench",
      [](std::size_t n, std::size_t k_true, double l, std::uint64_t dataset_seed, double delta,
         const std::string& corruption, std::uint64_t oracle_seed) {
        return std::make_unique<Bench>(generate_hard_instance({n, k_true, l, dataset_seed}),
                                       delta, corruption, oracle_seed);
      },
      py::arg("n"), py::arg("k_true"), py::arg("l") = 0.0, py::arg("dataset_seed") = 0,
      py::arg("delta") = 0.0, py::arg("corruption") = "uniform-range",
      py::arg("oracle_seed") = 0,
      "Two-level metric: intra-cluster distance 1, inter-cluster distance l.");

  m.def(
      "run_sweep",
      [](const std::string& config_text) {
        const auto spec = SweepSpec::from_string(config_text);
        const auto result = oraclust::run_sweep(spec);
        py::dict d;
        d["header"] = ExperimentRecord::csv_header(is_kcenter_family(spec.algo));
        std::vector<std::string> rows;
        rows.reserve(result.records.size());
        for (const auto& rec : result.records) rows.push_back(rec.csv_row());
        d["rows"] = rows;
        d["summary"] = result.summary;
        d["best_cell"] = result.best_cell;
        d["best_score"] = result.best_score;
        return d;
      },
      py::arg("config_text"),
      "Run a full experiment sweep from config text (same key=value format as the CLI).");
}
