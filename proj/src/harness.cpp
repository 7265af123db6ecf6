#include "oraclust/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "oraclust/brute.hpp"
#include "oraclust/rng.hpp"

namespace oraclust {

std::string to_string(Algo a) {
  switch (a) {
    case Algo::kKMeansWS: return "kmeans-ws";
    case Algo::kKCenterWS: return "kcenter-ws";
    case Algo::kKMeansStrong: return "kmeans-strong";
    case Algo::kGonzalezStrong: return "gonzalez-strong";
    case Algo::kGonzalezWeak: return "gonzalez-weak";
  }
  return "unknown";
}

Algo algo_from_string(const std::string& s) {
  if (s == "kmeans-ws") return Algo::kKMeansWS;
  if (s == "kcenter-ws") return Algo::kKCenterWS;
  if (s == "kmeans-strong") return Algo::kKMeansStrong;
  if (s == "gonzalez-strong") return Algo::kGonzalezStrong;
  if (s == "gonzalez-weak") return Algo::kGonzalezWeak;
  throw std::runtime_error("unknown algo '" + s + "'");
}

bool is_kcenter_family(Algo a) {
  return a == Algo::kKCenterWS || a == Algo::kGonzalezStrong || a == Algo::kGonzalezWeak;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

SweepSpec SweepSpec::from_string(const std::string& text) {
  SweepSpec spec;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "dataset") spec.dataset = val;
      else if (key == "path") spec.path = val;
      else if (key == "n") spec.n = std::stoul(val);
      else if (key == "k_true") spec.k_true = std::stoul(val);
      else if (key == "dim") spec.dim = std::stoul(val);
      else if (key == "mu_scale") spec.mu_scale = std::stod(val);
      else if (key == "l") spec.l = std::stod(val);
      else if (key == "dataset_seed") spec.dataset_seed = std::stoull(val);
      else if (key == "algo") spec.algo = algo_from_string(val);
      else if (key == "k") spec.k = std::stoul(val);
      else if (key == "deltas") spec.deltas = parse_list(val);
      else if (key == "constants") spec.constants = parse_list(val);
      else if (key == "repeats") spec.repeats = std::stoul(val);
      else if (key == "seed") spec.seed = std::stoull(val);
      else if (key == "eps") spec.eps = std::stod(val);
      else if (key == "oracle") {
        if (val == "prf") spec.oracle = OracleMode::kPrf;
        else if (val == "matrix") spec.oracle = OracleMode::kMatrix;
        else throw std::runtime_error("oracle must be prf|matrix");
      } else if (key == "corruption") {
        if (val == "uniform-range") spec.corruption = CorruptionMode::kUniformRange;
        else if (val == "label-swap") spec.corruption = CorruptionMode::kLabelSwap;
        else throw std::runtime_error("corruption must be uniform-range|label-swap");
      }
      else if (key == "c_ball") spec.c_ball = std::stod(val);
      else if (key == "c_iter") spec.c_iter = std::stod(val);
      else if (key == "c_sample") spec.c_sample = std::stod(val);
      else if (key == "t") spec.t_override = std::stoul(val);
      else if (key == "init") spec.init_count = std::stoul(val);
      else if (key == "budget") spec.budget = std::stoull(val);
      else if (key == "search_mode") spec.search_mode = val;
      else if (key == "log_base") {
        if (val == "2") spec.log_base = LogBase::k2;
        else if (val == "e") spec.log_base = LogBase::kE;
        else throw std::runtime_error("log_base must be 2|e");
      }
      else if (key == "out") spec.out = val;
      else throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": bad value for '" +
                               key + "'");
    }
  }
  spec.validate();
  return spec;
}

SweepSpec SweepSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

void SweepSpec::validate() const {
  if (dataset != "sbm" && dataset != "hard" && dataset != "csv" && dataset != "matrix")
    throw std::runtime_error("dataset must be sbm|hard|csv|matrix");
  if ((dataset == "csv" || dataset == "matrix") && path.empty())
    throw std::runtime_error("dataset=" + dataset + " requires path");
  if ((dataset == "sbm" || dataset == "hard") && n == 0)
    throw std::runtime_error("generated dataset requires n");
  if (k == 0) throw std::runtime_error("k must be positive");
  if (deltas.empty()) throw std::runtime_error("deltas must be non-empty");
  for (double d : deltas)
    if (!(d >= 0.0 && d < 0.5)) throw std::runtime_error("deltas must lie in [0, 1/2)");
  if (constants.empty()) throw std::runtime_error("constants must be non-empty");
  for (double c : constants)
    if (!(c > 0.0)) throw std::runtime_error("constants must be positive");
  if (repeats == 0) throw std::runtime_error("repeats must be positive");
  if (!(eps > 0.0)) throw std::runtime_error("eps must be positive");
  if (search_mode != "binary" && search_mode != "linear")
    throw std::runtime_error("search_mode must be binary|linear");
}

namespace {

struct Prepared {
  TrueMetric metric;
  std::size_t n = 0;
  double strong_baseline = 0.0;  // cost or radius, per family
  double weak_baseline = 0.0;    // at the largest delta
  std::vector<std::shared_ptr<const SymMatrix>> weak_matrices;  // per delta (matrix mode)
};

std::uint64_t oracle_seed_for(const SweepSpec& spec, double delta) {
  return mix64(spec.dataset_seed, static_cast<std::uint64_t>(std::llround(delta * 1e6)));
}

std::unique_ptr<WeakOracle> make_weak(const Prepared& prep, const SweepSpec& spec,
                                      std::size_t delta_idx, QueryLedger& ledger) {
  const double delta = spec.deltas[delta_idx];
  if (spec.oracle == OracleMode::kMatrix)
    return std::make_unique<WeakOracle>(prep.metric, prep.weak_matrices[delta_idx], ledger);
  WeakOracleConfig cfg;
  cfg.delta = delta;
  cfg.mode = spec.corruption;
  cfg.seed = oracle_seed_for(spec, delta);
  return std::make_unique<WeakOracle>(prep.metric, cfg, ledger);
}

TrueMetric build_metric(const SweepSpec& spec) {
  if (spec.dataset == "sbm")
    return TrueMetric::euclidean(
        generate_sbm({spec.n, spec.k_true, spec.dim, spec.mu_scale, spec.dataset_seed}));
  if (spec.dataset == "hard")
    return generate_hard_instance({spec.n, spec.k_true, spec.l, spec.dataset_seed});
  if (spec.dataset == "csv") return TrueMetric::euclidean(load_points_csv(spec.path));
  return TrueMetric::from_matrix(load_matrix_file(spec.path));
}

Prepared prepare(const SweepSpec& spec) {
  Prepared prep{build_metric(spec), 0, 0.0, 0.0, {}};
  prep.n = prep.metric.size();
  if (spec.oracle == OracleMode::kMatrix) {
    for (double delta : spec.deltas)
      prep.weak_matrices.push_back(
          build_experiment_weak_matrix(prep.metric, delta, oracle_seed_for(spec, delta)));
  }

  // one strong baseline per dataset; one weak baseline at the largest delta
  const std::size_t max_idx =
      std::max_element(spec.deltas.begin(), spec.deltas.end()) - spec.deltas.begin();
  if (is_kcenter_family(spec.algo)) {
    QueryLedger lg(prep.n);
    StrongOracle strong(prep.metric, lg);
    prep.strong_baseline = gonzalez_baseline(prep.metric, strong, spec.k, spec.seed).true_radius;
    QueryLedger lg2(prep.n);
    auto weak = make_weak(prep, spec, max_idx, lg2);
    prep.weak_baseline = gonzalez_baseline(prep.metric, *weak, spec.k, spec.seed).true_radius;
  } else {
    QueryLedger lg(prep.n);
    StrongOracle strong(prep.metric, lg);
    prep.strong_baseline =
        dsq_sampling_baseline(prep.metric, strong, spec.k, spec.seed).true_cost;
    QueryLedger lg2(prep.n);
    auto weak = make_weak(prep, spec, max_idx, lg2);
    prep.weak_baseline = dsq_sampling_baseline(prep.metric, *weak, spec.k, spec.seed).true_cost;
  }
  return prep;
}

std::variant<KMeansRow, KCenterRow> run_cell(const Prepared& prep, const SweepSpec& spec,
                                             std::size_t delta_idx, double constant,
                                             std::uint64_t run_seed) {
  const double delta = spec.deltas[delta_idx];
  QueryLedger ledger(prep.n);
  StrongOracle strong(prep.metric, ledger);
  auto weak = make_weak(prep, spec, delta_idx, ledger);

  if (spec.algo == Algo::kKMeansWS || spec.algo == Algo::kKMeansStrong) {
    KMeansRow row;
    row.algo = to_string(spec.algo);
    row.n = prep.n;
    row.k = spec.k;
    row.delta = delta;
    row.eps = spec.eps;
    row.seed = run_seed;
    if (spec.algo == Algo::kKMeansWS) {
      KMeansWSParams p;
      p.k = spec.k;
      p.epsilon = spec.eps;
      p.c_iter = spec.c_iter * constant;
      p.estimator.c_ball = spec.c_ball;
      p.estimator.log_base = spec.log_base;
      if (spec.t_override != 0) p.t_override = spec.t_override;
      if (spec.init_count != 0) p.init_count = spec.init_count;
      p.seed = run_seed;
      p.strong_budget = spec.budget;
      auto [inst, bi] = kmeans_weak_strong(prep.metric, strong, *weak, p);
      const auto final_centers = solve_weighted(inst, spec.k, mix64(run_seed, 77));
      row.c_ball = spec.c_ball;
      row.c_iter = p.c_iter;
      row.true_cost = evaluate_cost(prep.metric, final_centers.centers);
      row.est_cost = bi.est_cost;
      row.aborted = bi.aborted;
    } else {
      const auto rounds = std::max<std::size_t>(
          spec.k, static_cast<std::size_t>(std::llround(constant * static_cast<double>(spec.k))));
      const auto res = dsq_sampling_baseline(prep.metric, strong, rounds, run_seed);
      row.c_ball = 0.0;
      row.c_iter = constant;
      row.true_cost = res.true_cost;
      row.est_cost = res.true_cost;
    }
    row.strong_distinct = ledger.strong_distinct();
    row.weak_distinct = ledger.weak_distinct();
    row.approx_factor = prep.strong_baseline > 0.0 ? row.true_cost / prep.strong_baseline : 0.0;
    return row;
  }

  KCenterRow row;
  row.algo = to_string(spec.algo);
  row.n = prep.n;
  row.k = spec.k;
  row.delta = delta;
  row.eps = spec.eps;
  row.seed = run_seed;
  if (spec.algo == Algo::kKCenterWS) {
    KCenterWSParams p;
    p.k = spec.k;
    p.epsilon = spec.eps;
    p.c_sample = spec.c_sample * constant;
    p.estimator.c_ball = spec.c_ball;
    p.estimator.log_base = spec.log_base;
    p.seed = run_seed;
    p.binary_search = spec.search_mode == "binary";
    const auto res = kcenter_weak_strong(prep.metric, strong, *weak, p);
    row.c_sample = p.c_sample;
    row.c_ball = spec.c_ball;
    row.search_mode = spec.search_mode;
    row.found_rad = res.found_rad;
    row.true_radius = res.true_radius;
    row.status = to_string(res.status);
  } else {
    DistanceOracle& oracle =
        spec.algo == Algo::kGonzalezWeak ? static_cast<DistanceOracle&>(*weak) : strong;
    const auto res = gonzalez_baseline(prep.metric, oracle, spec.k, run_seed);
    row.c_sample = 0.0;
    row.c_ball = 0.0;
    row.search_mode = "-";
    row.found_rad = res.true_radius;
    row.true_radius = res.true_radius;
    row.status = "completed";
  }
  row.strong_distinct = ledger.strong_distinct();
  row.weak_distinct = ledger.weak_distinct();
  row.approx_factor = prep.strong_baseline > 0.0 ? row.true_radius / prep.strong_baseline : 0.0;
  return row;
}

std::size_t worker_cap(std::size_t jobs) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ORACLUST_WORKERS")) {
    try {
      cap = std::max<std::size_t>(1, std::stoul(env));
    } catch (const std::exception&) {
      throw std::runtime_error("ORACLUST_WORKERS must be a positive integer");
    }
  }
  return std::min(cap, jobs);
}

}  // namespace

std::variant<KMeansRow, KCenterRow> run_single(const SweepSpec& spec, double delta,
                                               double constant, std::uint64_t run_seed) {
  SweepSpec one = spec;
  one.deltas = {delta};
  one.constants = {constant};
  one.validate();
  const Prepared prep = prepare(one);
  return run_cell(prep, one, 0, constant, run_seed);
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const Prepared prep = prepare(spec);
  const std::size_t n_cells = spec.deltas.size() * spec.constants.size();
  const std::size_t jobs = n_cells * spec.repeats;
  const double total_pairs = static_cast<double>(prep.n) * (prep.n - 1) / 2.0;

  SweepResult result;
  result.records.assign(jobs, {});
  std::atomic<std::size_t> next_job{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t j = next_job.fetch_add(1);
      if (j >= jobs) return;
      const std::size_t cell = j / spec.repeats;
      const std::size_t repeat = j % spec.repeats;
      const std::size_t delta_idx = cell / spec.constants.size();
      const double constant = spec.constants[cell % spec.constants.size()];
      ExperimentRecord rec;
      rec.cell = cell;
      rec.constant = constant;
      rec.repeat = repeat;
      rec.strong_baseline_cost = prep.strong_baseline;
      rec.weak_baseline_cost = prep.weak_baseline;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        rec.row = run_cell(prep, spec, delta_idx, constant, spec.seed + repeat);
      } catch (const std::exception& e) {
        // keep the default-constructed row, mark the failure, carry on
        if (is_kcenter_family(spec.algo)) {
          KCenterRow r;
          r.algo = to_string(spec.algo);
          r.delta = spec.deltas[delta_idx];
          rec.row = r;
        } else {
          KMeansRow r;
          r.algo = to_string(spec.algo);
          r.delta = spec.deltas[delta_idx];
          rec.row = r;
        }
        rec.run_status = std::string("error: ") + e.what();
      }
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
      const std::uint64_t sd = std::holds_alternative<KMeansRow>(rec.row)
                                   ? std::get<KMeansRow>(rec.row).strong_distinct
                                   : std::get<KCenterRow>(rec.row).strong_distinct;
      rec.pct_strong = total_pairs > 0.0 ? 100.0 * static_cast<double>(sd) / total_pairs : 0.0;
      result.records[j] = std::move(rec);
    }
  };
  const std::size_t workers = worker_cap(jobs);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  // per-cell aggregation and scoring: strong queries weighted by log(mean cost)
  std::ostringstream sum;
  sum << "cell,delta,constant,ok_runs,mean_cost,mean_strong_distinct,pct_strong,score\n";
  result.best_cell = 0;
  result.best_score = std::numeric_limits<double>::infinity();
  double best_queries = std::numeric_limits<double>::infinity();
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const double delta = spec.deltas[cell / spec.constants.size()];
    const double constant = spec.constants[cell % spec.constants.size()];
    double cost_sum = 0.0, sd_sum = 0.0;
    std::size_t ok = 0;
    for (std::size_t r = 0; r < spec.repeats; ++r) {
      const auto& rec = result.records[cell * spec.repeats + r];
      if (rec.run_status != "ok") continue;
      ++ok;
      if (std::holds_alternative<KMeansRow>(rec.row)) {
        cost_sum += std::get<KMeansRow>(rec.row).true_cost;
        sd_sum += static_cast<double>(std::get<KMeansRow>(rec.row).strong_distinct);
      } else {
        cost_sum += std::get<KCenterRow>(rec.row).true_radius;
        sd_sum += static_cast<double>(std::get<KCenterRow>(rec.row).strong_distinct);
      }
    }
    double mean_cost = 0.0, mean_sd = 0.0, score = std::numeric_limits<double>::infinity();
    if (ok > 0) {
      mean_cost = cost_sum / static_cast<double>(ok);
      mean_sd = sd_sum / static_cast<double>(ok);
      score = mean_sd * std::log(std::max(mean_cost, 1e-12));
      if (score < result.best_score ||
          (score == result.best_score && mean_sd < best_queries)) {
        result.best_score = score;
        result.best_cell = cell;
        best_queries = mean_sd;
      }
    }
    sum << cell << ',' << format_double(delta) << ',' << format_double(constant) << ',' << ok
        << ',' << format_double(mean_cost) << ',' << format_double(mean_sd) << ','
        << format_double(total_pairs > 0.0 ? 100.0 * mean_sd / total_pairs : 0.0) << ','
        << format_double(score) << "\n";
  }
  sum << "best cell " << result.best_cell << ": delta="
      << format_double(spec.deltas[result.best_cell / spec.constants.size()]) << " constant="
      << format_double(spec.constants[result.best_cell % spec.constants.size()])
      << " score=" << format_double(result.best_score) << "\n";
  sum << "note: pct_strong counts distinct point pairs out of n(n-1)/2 = "
      << format_double(total_pairs)
      << "; a budget of m point-indexed queries corresponds to m(m-1)/2 pair queries.\n";
  result.summary = sum.str();
  return result;
}

std::string ExperimentRecord::csv_header(bool kcenter_family) {
  const std::string base = kcenter_family ? KCenterRow::csv_header() : KMeansRow::csv_header();
  return base + ",cell,constant,repeat,strong_baseline_cost,weak_baseline_cost,pct_strong,"
                "wall_ms,run_status";
}

std::string ExperimentRecord::csv_row() const {
  std::ostringstream os;
  if (std::holds_alternative<KMeansRow>(row))
    os << std::get<KMeansRow>(row).csv_row();
  else
    os << std::get<KCenterRow>(row).csv_row();
  os << ',' << cell << ',' << format_double(constant) << ',' << repeat << ','
     << format_double(strong_baseline_cost) << ',' << format_double(weak_baseline_cost) << ','
     << format_double(pct_strong) << ',' << format_double(wall_ms) << ',' << run_status;
  return os.str();
}

ExperimentRecord ExperimentRecord::from_csv(bool kcenter_family, const std::string& line) {
  const auto fields = split_csv_line(line);
  const std::size_t base = kcenter_family ? 15 : 14;
  if (fields.size() != base + 8)
    throw std::runtime_error("experiment record: wrong field count");
  std::string front;
  for (std::size_t i = 0; i < base; ++i) front += (i ? "," : "") + fields[i];
  ExperimentRecord rec;
  if (kcenter_family)
    rec.row = KCenterRow::from_csv(front);
  else
    rec.row = KMeansRow::from_csv(front);
  rec.cell = std::stoul(fields[base]);
  rec.constant = std::stod(fields[base + 1]);
  rec.repeat = std::stoul(fields[base + 2]);
  rec.strong_baseline_cost = std::stod(fields[base + 3]);
  rec.weak_baseline_cost = std::stod(fields[base + 4]);
  rec.pct_strong = std::stod(fields[base + 5]);
  rec.wall_ms = std::stod(fields[base + 6]);
  rec.run_status = fields[base + 7];
  return rec;
}

}  // namespace oraclust
