// Benchmark harness for the Newton Frank-Wolfe solver and its first-order
// baselines: synthetic data generation, experiment runs with CSV traces, and
// solver-parameter checking.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "nfw/bench/csv_io.hpp"
#include "nfw/bench/datagen.hpp"
#include "nfw/bench/experiment.hpp"
#include "nfw/bench/libsvm.hpp"
#include "nfw/sc_core.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitData = 3;

struct GenArgs {
  std::string problem;
  long n = 0, p = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string cov_path;
};

int run_gen(const GenArgs& args) {
  try {
    nfw::bench::Dataset data;
    if (args.problem == "portfolio") {
      data = nfw::bench::gen_portfolio(args.n, args.p, args.seed);
    } else if (args.problem == "dopt") {
      Eigen::MatrixXd cov;
      if (!args.cov_path.empty()) cov = nfw::bench::load_matrix_csv(args.cov_path);
      data = nfw::bench::gen_dopt_points(args.n, args.p, args.seed, cov);
    } else {
      std::cerr << "gen: unsupported problem '" << args.problem
                << "' (synthetic generators exist for portfolio and dopt)\n";
      return kExitUsage;
    }
    nfw::bench::save_matrix_csv(args.out, data.dense);
    std::cout << "wrote " << data.rows() << "x" << data.cols() << " matrix to "
              << args.out << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "gen: " << e.what() << "\n";
    return kExitData;
  }
}

struct CheckArgs {
  nfw::SolverParams<double> params;
  std::string grid_out;
  long grid_steps = 200;
};

int run_check(const CheckArgs& args) {
  const nfw::ParamsDiagnostic diag = nfw::validate_params(args.params);
  std::cout << (diag.ok ? "parameters OK" : "parameters INVALID")
            << (diag.ok && !diag.strict_ok ? " (within relative slack 1e-3)" : "")
            << "\n"
            << diag.report;
  if (!args.grid_out.empty()) {
    std::ofstream out(args.grid_out);
    if (!out) {
      std::cerr << "check: cannot open " << args.grid_out << "\n";
      return kExitData;
    }
    out << "beta,sigma,feasible\n";
    char buf[80];
    for (long i = 1; i < args.grid_steps; ++i) {
      for (long j = 1; j < args.grid_steps; ++j) {
        const double beta = 0.5 * double(i) / double(args.grid_steps);
        const double sigma = double(j) / double(args.grid_steps);
        nfw::SolverParams<double> p = args.params;
        p.beta = beta;
        p.sigma = sigma;
        const bool ok = nfw::validate_params(p).strict_ok;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d\n", beta, sigma, ok ? 1 : 0);
        out << buf;
      }
    }
    std::cout << "wrote feasible-region grid to " << args.grid_out << "\n";
  }
  return diag.ok ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton Frank-Wolfe benchmark harness"};
  app.require_subcommand(1);

  // --- gen ---
  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
  gen->add_option("--problem", gen_args.problem, "portfolio | dopt")->required();
  gen->add_option("--n", gen_args.n, "rows (scenarios / point dimension)")->required();
  gen->add_option("--p", gen_args.p, "columns (assets / points)")->required();
  gen->add_option("--seed", gen_args.seed, "RNG seed")->required();
  gen->add_option("--out", gen_args.out, "output CSV path")->required();
  gen->add_option("--cov", gen_args.cov_path, "covariance CSV for dopt points");

  // --- run ---
  nfw::bench::ExperimentConfig cfg;
  std::string solvers_csv, config_path;
  CLI::App* run = app.add_subcommand("run", "run solvers and emit trace CSVs");
  run->add_option("--config", config_path, "key = value config file");
  auto* o_problem = run->add_option("--problem", cfg.problem, "portfolio | dopt | logistic");
  auto* o_data = run->add_option("--data", cfg.data_path, "dataset file (CSV or LIBSVM)");
  auto* o_n = run->add_option("--n", cfg.n, "synthetic rows");
  auto* o_p = run->add_option("--p", cfg.p, "synthetic cols");
  auto* o_seed = run->add_option("--seed", cfg.seed, "synthetic RNG seed");
  auto* o_solvers = run->add_option("--solvers", solvers_csv,
                                    "comma list: nfw,fw,fw-ls,pg-bb,fw-away-dopt");
  auto* o_beta = run->add_option("--beta", cfg.params.beta, "full-step region size");
  auto* o_sigma = run->add_option("--sigma", cfg.params.sigma, "contraction factor");
  auto* o_cbig = run->add_option("--cbig", cfg.params.c_big, "accuracy ratio C");
  auto* o_c1 = run->add_option("--c1", cfg.params.c_one, "damped accuracy fraction");
  auto* o_delta = run->add_option("--delta", cfg.params.delta, "damped step scaling");
  auto* o_eps = run->add_option("--eps", cfg.params.eps, "target accuracy");
  auto* o_maxlmo = run->add_option("--max-lmo", cfg.budget.max_lmo, "LMO budget");
  auto* o_maxsec = run->add_option("--max-seconds", cfg.budget.max_seconds, "wall cap");
  auto* o_maxout = run->add_option("--max-outer", cfg.budget.max_outer, "iteration cap");
  auto* o_rho1 = run->add_option("--rho1", cfg.l1_radius, "logistic ell1 radius");
  auto* o_mu = run->add_option("--mu", cfg.mu, "logistic ridge weight (default 1/n)");
  auto* o_std = run->add_flag("--standardize", cfg.standardize,
                              "rescale logistic to standard self-concordant form");
  auto* o_out = run->add_option("--out", cfg.out_dir, "output directory");

  // --- check ---
  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "validate solver parameters");
  check->add_option("--beta", check_args.params.beta, "full-step region size");
  check->add_option("--sigma", check_args.params.sigma, "contraction factor");
  check->add_option("--cbig", check_args.params.c_big, "accuracy ratio C");
  check->add_option("--c1", check_args.params.c_one, "damped accuracy fraction");
  check->add_option("--delta", check_args.params.delta, "damped step scaling");
  check->add_option("--eps", check_args.params.eps, "target accuracy");
  check->add_option("--grid-out", check_args.grid_out, "feasible-region grid CSV");
  check->add_option("--grid-steps", check_args.grid_steps, "grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) return run_gen(gen_args);
  if (check->parsed()) return run_check(check_args);

  // run
  try {
    if (!config_path.empty()) {
      nfw::bench::ExperimentConfig file_cfg;
      nfw::bench::apply_config_entries(nfw::bench::parse_config_file(config_path),
                                       &file_cfg);
      // CLI flags override the file.
      if (!o_problem->count()) cfg.problem = file_cfg.problem;
      if (!o_data->count()) cfg.data_path = file_cfg.data_path;
      if (!o_n->count()) cfg.n = file_cfg.n;
      if (!o_p->count()) cfg.p = file_cfg.p;
      if (!o_seed->count()) {
        cfg.seed = file_cfg.seed;
        cfg.seed_set = file_cfg.seed_set;
      }
      if (!o_n->count() && !o_p->count() && !o_seed->count())
        cfg.synthetic = file_cfg.synthetic;
      if (!o_solvers->count()) cfg.solvers = file_cfg.solvers;
      if (!o_beta->count()) cfg.params.beta = file_cfg.params.beta;
      if (!o_sigma->count()) cfg.params.sigma = file_cfg.params.sigma;
      if (!o_cbig->count()) cfg.params.c_big = file_cfg.params.c_big;
      if (!o_c1->count()) cfg.params.c_one = file_cfg.params.c_one;
      if (!o_delta->count()) cfg.params.delta = file_cfg.params.delta;
      if (!o_eps->count()) cfg.params.eps = file_cfg.params.eps;
      if (!o_maxlmo->count()) cfg.budget.max_lmo = file_cfg.budget.max_lmo;
      if (!o_maxsec->count()) cfg.budget.max_seconds = file_cfg.budget.max_seconds;
      if (!o_maxout->count()) cfg.budget.max_outer = file_cfg.budget.max_outer;
      if (!o_rho1->count()) cfg.l1_radius = file_cfg.l1_radius;
      if (!o_mu->count()) cfg.mu = file_cfg.mu;
      if (!o_std->count()) cfg.standardize = file_cfg.standardize;
      if (!o_out->count()) cfg.out_dir = file_cfg.out_dir;
    }
    if (o_seed->count()) cfg.seed_set = true;
    if (o_n->count() || o_p->count() || o_seed->count()) cfg.synthetic = true;
    if (o_solvers->count()) cfg.solvers = nfw::bench::parse_solver_list(solvers_csv);

    const nfw::bench::ExperimentResult result = nfw::bench::run_experiment(cfg);
    for (const auto& outcome : result.outcomes) {
      if (outcome.ok)
        std::cout << outcome.solver << ": ok, trace at " << outcome.csv_path << "\n";
      else
        std::cerr << outcome.solver << ": FAILED: " << outcome.error << "\n";
    }
    std::cout << "metadata at " << result.metadata_path << "\n";
    return result.failures == 0 ? kExitOk : kExitSolver;
  } catch (const nfw::bench::DataError& e) {
    std::cerr << "run: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "run: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "run: " << e.what() << "\n";
    return kExitSolver;
  }
}
