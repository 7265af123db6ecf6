#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "oraclust/harness.hpp"
#include "oraclust/svg.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void add_dataset_options(CLI::App* cmd, oraclust::SweepSpec& spec) {
  cmd->add_option("--dataset", spec.dataset, "sbm|hard|csv|matrix");
  cmd->add_option("--path", spec.path, "input file for csv/matrix datasets");
  cmd->add_option("--n", spec.n, "points (generated datasets)");
  cmd->add_option("--k-true", spec.k_true, "planted clusters");
  cmd->add_option("--dim", spec.dim, "dimension, 0 = k_true");
  cmd->add_option("--mu-scale", spec.mu_scale, "cluster mean scale");
  cmd->add_option("--l", spec.l, "hard-instance cluster size, 0 = default");
  cmd->add_option("--dataset-seed", spec.dataset_seed, "dataset seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clustering with cheap unreliable distance queries plus a metered exact oracle"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a dataset file");
  gen->require_subcommand(1);
  struct {
    std::size_t n = 1000, k = 4, dim = 0;
    double mu_scale = 1e5, l = 0.0;
    std::uint64_t seed = 1;
    std::string out;
  } g;
  auto* gen_sbm = gen->add_subcommand("sbm", "gaussian clusters, written as a points csv");
  gen_sbm->add_option("--n", g.n, "points")->required();
  gen_sbm->add_option("--k", g.k, "clusters")->required();
  gen_sbm->add_option("--dim", g.dim, "dimension, 0 = k");
  gen_sbm->add_option("--mu-scale", g.mu_scale, "cluster mean scale");
  gen_sbm->add_option("--seed", g.seed, "seed");
  gen_sbm->add_option("--out", g.out, "output csv")->required();
  gen_sbm->callback([&] {
    oraclust::save_points_csv(oraclust::generate_sbm({g.n, g.k, g.dim, g.mu_scale, g.seed}),
                              g.out);
  });
  auto* gen_hard = gen->add_subcommand("hard", "two-distance instance, written as a matrix file");
  gen_hard->add_option("--n", g.n, "points")->required();
  gen_hard->add_option("--k", g.k, "clusters")->required();
  gen_hard->add_option("--l", g.l, "cluster size, 0 = default");
  gen_hard->add_option("--seed", g.seed, "seed");
  gen_hard->add_option("--out", g.out, "output matrix file")->required();
  gen_hard->callback([&] {
    const auto metric = oraclust::generate_hard_instance({g.n, g.k, g.l, g.seed});
    oraclust::save_matrix_file(metric.matrix(), g.out);
  });

  // ---- run ----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "single run, row printed to stdout");
  oraclust::SweepSpec rs;
  rs.n = 1000;
  rs.k_true = 4;
  std::string run_algo = "kmeans-ws";
  double run_delta = 0.2, run_constant = 1.0;
  std::string run_oracle = "prf", run_corruption = "label-swap", run_log_base = "2";
  run->add_option("algo", run_algo, "kmeans-ws|kcenter-ws|kmeans-strong|gonzalez-strong|gonzalez-weak")
      ->required();
  add_dataset_options(run, rs);
  run->add_option("--k", rs.k, "centers")->required();
  run->add_option("--delta", run_delta, "weak oracle corruption rate, in [0, 1/2)");
  run->add_option("--constant", run_constant, "multiplier on the algo's sampling constant");
  run->add_option("--seed", rs.seed, "run seed");
  run->add_option("--eps", rs.eps, "accuracy parameter");
  run->add_option("--oracle", run_oracle, "prf|matrix (matrix = pre-drawn corruption table)");
  run->add_option("--corruption", run_corruption, "uniform-range|label-swap");
  run->add_option("--c-ball", rs.c_ball, "ball size constant");
  run->add_option("--c-iter", rs.c_iter, "k-means round constant");
  run->add_option("--c-sample", rs.c_sample, "k-center sample constant");
  run->add_option("--t", rs.t_override, "k-means rounds override, 0 = formula");
  run->add_option("--init", rs.init_count, "k-means initial centers, 0 = ball size");
  run->add_option("--budget", rs.budget, "strong query cap, 0 = none");
  run->add_option("--search-mode", rs.search_mode, "binary|linear");
  run->add_option("--log-base", run_log_base, "2|e");
  run->callback([&] {
    rs.algo = oraclust::algo_from_string(run_algo);
    rs.deltas = {run_delta};
    rs.constants = {run_constant};
    rs.oracle = run_oracle == "matrix" ? oraclust::OracleMode::kMatrix
                                       : oraclust::OracleMode::kPrf;
    if (run_oracle != "prf" && run_oracle != "matrix")
      throw std::runtime_error("oracle must be prf|matrix");
    if (run_corruption == "uniform-range")
      rs.corruption = oraclust::CorruptionMode::kUniformRange;
    else if (run_corruption == "label-swap")
      rs.corruption = oraclust::CorruptionMode::kLabelSwap;
    else
      throw std::runtime_error("corruption must be uniform-range|label-swap");
    if (run_log_base == "2")
      rs.log_base = oraclust::LogBase::k2;
    else if (run_log_base == "e")
      rs.log_base = oraclust::LogBase::kE;
    else
      throw std::runtime_error("log_base must be 2|e");
    const auto row = oraclust::run_single(rs, run_delta, run_constant, rs.seed);
    if (std::holds_alternative<oraclust::KCenterRow>(row)) {
      std::cout << oraclust::KCenterRow::csv_header() << "\n"
                << std::get<oraclust::KCenterRow>(row).csv_row() << "\n";
    } else {
      std::cout << oraclust::KMeansRow::csv_header() << "\n"
                << std::get<oraclust::KMeansRow>(row).csv_row() << "\n";
    }
  });

  // ---- sweep --------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "run a sweep from a key=value config file");
  std::string sweep_config, sweep_out;
  sweep->add_option("config", sweep_config, "config file")->required();
  sweep->add_option("--out", sweep_out, "records csv (overrides the config's out key)");
  sweep->callback([&] {
    auto spec = oraclust::SweepSpec::from_file(sweep_config);
    if (!sweep_out.empty()) spec.out = sweep_out;
    if (spec.out.empty()) spec.out = "sweep.csv";
    const auto result = oraclust::run_sweep(spec);
    std::ostringstream csv;
    csv << oraclust::ExperimentRecord::csv_header(oraclust::is_kcenter_family(spec.algo)) << "\n";
    for (const auto& rec : result.records) csv << rec.csv_row() << "\n";
    write_file(spec.out, csv.str());
    std::cout << result.summary;
    std::cout << "records: " << spec.out << "\n";
  });

  // ---- plot ---------------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "render a sweep csv as an svg chart");
  std::string plot_csv, plot_y, plot_out = "plot.svg";
  plot->add_option("csv", plot_csv, "sweep records csv")->required();
  plot->add_option("--y", plot_y, "y column, default true_cost/true_radius");
  plot->add_option("--out", plot_out, "output svg");
  plot->callback([&] {
    const auto table = oraclust::load_csv_table(plot_csv);
    std::string y = plot_y;
    if (y.empty()) y = table.has_column("true_radius") ? "true_radius" : "true_cost";
    write_file(plot_out, oraclust::emit_plot(table, y));
    std::cout << "plot: " << plot_out << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
