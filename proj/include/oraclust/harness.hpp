#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oraclust/generators.hpp"
#include "oraclust/kcenter.hpp"
#include "oraclust/kmeans.hpp"
#include "oraclust/rows.hpp"

namespace oraclust {

enum class Algo { kKMeansWS, kKCenterWS, kKMeansStrong, kGonzalezStrong, kGonzalezWeak };
std::string to_string(Algo a);
Algo algo_from_string(const std::string& s);
bool is_kcenter_family(Algo a);

enum class OracleMode { kPrf, kMatrix };

// Experiment sweep: (delta x constant) cells, `repeats` runs per cell. The
// constant multiplies c_iter (k-means), c_sample (k-center) or the baseline
// oversampling rounds (k-means-strong); gonzalez ignores it.
struct SweepSpec {
  // dataset
  std::string dataset = "sbm";  // sbm | hard | csv | matrix
  std::string path;             // csv/matrix input
  std::size_t n = 0, k_true = 1, dim = 0;
  double mu_scale = 1e5, l = 0.0;
  std::uint64_t dataset_seed = 1;
  // algorithm
  Algo algo = Algo::kKMeansWS;
  std::size_t k = 1;
  std::vector<double> deltas;
  std::vector<double> constants;
  std::size_t repeats = 1;
  std::uint64_t seed = 1;  // run seed base; repeat r uses seed + r
  double eps = 0.5;
  OracleMode oracle = OracleMode::kPrf;
  CorruptionMode corruption = CorruptionMode::kLabelSwap;
  double c_ball = 0.05, c_iter = 2e-8, c_sample = 0.05;
  std::size_t t_override = 0;   // 0 = formula
  std::size_t init_count = 0;   // 0 = ball_size
  std::uint64_t budget = 0;     // strong raw cap, 0 = none
  std::string search_mode = "binary";
  LogBase log_base = LogBase::k2;
  std::string out;

  // Flat key=value text (# comments, blank lines ok). Unknown keys and
  // malformed values raise std::runtime_error; deltas must lie in [0, 1/2).
  static SweepSpec from_file(const std::string& path);
  static SweepSpec from_string(const std::string& text);
  void validate() const;
};

struct ExperimentRecord {
  std::size_t cell = 0;     // delta-major, constant-minor
  double constant = 1.0;
  std::size_t repeat = 0;
  std::variant<KMeansRow, KCenterRow> row;
  double strong_baseline_cost = 0.0;  // shared per dataset
  double weak_baseline_cost = 0.0;    // shared per dataset, at the largest delta
  double pct_strong = 0.0;            // 100 * strong_distinct / C(n,2)
  double wall_ms = 0.0;               // informational; excluded from determinism checks
  std::string run_status = "ok";

  static std::string csv_header(bool kcenter_family);
  std::string csv_row() const;
  static ExperimentRecord from_csv(bool kcenter_family, const std::string& line);
};

struct SweepResult {
  std::vector<ExperimentRecord> records;  // fixed order: cell-major, repeat-minor
  std::string summary;                    // per-cell table, best cell, conversion note
  std::size_t best_cell = 0;
  double best_score = 0.0;
};

// Runs every cell; per-run errors are recorded in run_status without aborting
// the sweep. Worker cap: min(ORACLUST_WORKERS, jobs), default 1 worker per
// hardware thread. Records are keyed by job index, so output is identical for
// any cap.
SweepResult run_sweep(const SweepSpec& spec);

// Single run helper shared by the CLI `run` subcommand: one (delta, constant)
// cell, baseline included for the approx factor.
std::variant<KMeansRow, KCenterRow> run_single(const SweepSpec& spec, double delta,
                                               double constant, std::uint64_t run_seed);

}  // namespace oraclust
