#include "nfw/bench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <memory>
#include <stdexcept>

#include "nfw/baselines.hpp"
#include "nfw/bench/csv_io.hpp"
#include "nfw/bench/datagen.hpp"
#include "nfw/bench/libsvm.hpp"
#include "nfw/feasible_set.hpp"
#include "nfw/nfw_solver.hpp"
#include "nfw/objectives/dopt.hpp"
#include "nfw/objectives/logistic.hpp"
#include "nfw/objectives/portfolio.hpp"

namespace nfw::bench {

namespace {

const std::vector<std::string> kKnownTags = {"NFW", "FW", "FW-LS", "PG-BB",
                                             "FW-AWAY-DOPT"};
const std::vector<std::string> kReservedTags = {"PN", "APG-LSRS"};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Instance {
  std::unique_ptr<ObjectiveOracle<double>> objective;
  std::unique_ptr<FeasibleSet<double>> set;
  Eigen::VectorXd x0;
  double mu_used = 0;  // logistic only
};

Instance build_instance(const ExperimentConfig& cfg) {
  Instance inst;
  Dataset data;
  if (cfg.synthetic) {
    if (cfg.problem == "portfolio") {
      data = gen_portfolio(cfg.n, cfg.p, cfg.seed);
    } else if (cfg.problem == "dopt") {
      data = gen_dopt_points(cfg.n, cfg.p, cfg.seed);
    } else {
      throw DataError("run_experiment: no synthetic generator for problem '" +
                      cfg.problem + "' (supply --data)");
    }
  } else {
    if (cfg.problem == "logistic") {
      data = parse_libsvm(cfg.data_path);
    } else {
      data.dense = load_matrix_csv(cfg.data_path);
    }
  }

  if (cfg.problem == "portfolio") {
    auto obj = std::make_unique<PortfolioObjective<double>>(data.dense);
    inst.set = std::make_unique<Simplex<double>>(obj->dim());
    inst.objective = std::move(obj);
  } else if (cfg.problem == "dopt") {
    auto obj = std::make_unique<DOptObjective<double>>(data.dense);
    inst.set = std::make_unique<Simplex<double>>(obj->dim());
    inst.objective = std::move(obj);
  } else if (cfg.problem == "logistic") {
    if (!data.is_sparse || !data.has_labels())
      throw DataError("run_experiment: logistic needs labeled LIBSVM data");
    const double mu = cfg.mu > 0 ? cfg.mu : 1.0 / double(data.rows());
    inst.mu_used = mu;
    using Sparse = Eigen::SparseMatrix<double>;
    auto obj = std::make_unique<LogisticObjective<double, Sparse>>(
        LogisticObjective<double, Sparse>::from_samples(data.sparse, data.labels, mu));
    obj->set_standardized(cfg.standardize);
    inst.set = std::make_unique<L1Ball<double>>(obj->dim(), cfg.l1_radius);
    inst.objective = std::move(obj);
  } else {
    throw std::invalid_argument("run_experiment: unknown problem '" + cfg.problem +
                                "'");
  }
  inst.x0 = inst.set->default_start();
  return inst;
}

SolverReport<double> dispatch(const std::string& tag, const Instance& inst,
                              const ExperimentConfig& cfg) {
  BaselineOptions base_opts;
  base_opts.gap_tol = cfg.params.eps;  // baselines stop on the FW gap instead
  if (tag == "NFW")
    return nfw_solve(*inst.objective, *inst.set, cfg.params, inst.x0, cfg.budget);
  if (tag == "FW")
    return fw_standard(*inst.objective, *inst.set, inst.x0, cfg.budget, base_opts);
  if (tag == "FW-LS")
    return fw_linesearch(*inst.objective, *inst.set, inst.x0, cfg.budget, base_opts);
  if (tag == "PG-BB")
    return pg_bb(*inst.objective, *inst.set, inst.x0, cfg.budget, base_opts);
  if (tag == "FW-AWAY-DOPT")
    return fw_away_dopt(*inst.objective, *inst.set, inst.x0, cfg.budget, base_opts);
  throw std::invalid_argument("run_experiment: unknown solver tag '" + tag + "'");
}

}  // namespace

const std::vector<std::string>& known_solver_tags() { return kKnownTags; }

std::vector<std::string> parse_solver_list(const std::string& csv) {
  std::vector<std::string> tags;
  std::string token;
  std::stringstream ss(csv);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const std::string tag = upper(token);
    if (std::find(kReservedTags.begin(), kReservedTags.end(), tag) !=
        kReservedTags.end())
      throw std::invalid_argument("solver tag '" + tag +
                                  "' is reserved for externally produced traces");
    if (std::find(kKnownTags.begin(), kKnownTags.end(), tag) == kKnownTags.end())
      throw std::invalid_argument("unknown solver tag '" + token + "'");
    tags.push_back(tag);
  }
  if (tags.empty()) throw std::invalid_argument("empty solver list");
  return tags;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.synthetic == !cfg.data_path.empty())
    throw std::invalid_argument("run_experiment: exactly one data source required");
  if (cfg.synthetic && !cfg.seed_set)
    throw std::invalid_argument("run_experiment: synthetic data requires a seed");
  if (cfg.out_dir.empty())
    throw std::invalid_argument("run_experiment: output directory required");
  const ParamsDiagnostic diag = validate_params(cfg.params);
  if (!diag.ok)
    throw std::invalid_argument("run_experiment: invalid solver parameters\n" +
                                diag.report);

  std::filesystem::create_directories(cfg.out_dir);
  const Instance inst = build_instance(cfg);

  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["problem"] = cfg.problem;
  meta["data"] = cfg.synthetic ? "synthetic" : cfg.data_path;
  if (cfg.synthetic) {
    meta["n"] = cfg.n;
    meta["p"] = cfg.p;
    meta["seed"] = cfg.seed;
  }
  meta["decision_dim"] = inst.objective->dim();
  meta["params"] = {{"beta", cfg.params.beta},   {"sigma", cfg.params.sigma},
                    {"cbig", cfg.params.c_big},  {"c1", cfg.params.c_one},
                    {"delta", cfg.params.delta}, {"eps", cfg.params.eps}};
  meta["budget"]["max_outer"] = cfg.budget.max_outer;
  if (cfg.budget.max_lmo == std::numeric_limits<long>::max())
    meta["budget"]["max_lmo"] = "unlimited";
  else
    meta["budget"]["max_lmo"] = cfg.budget.max_lmo;
  if (std::isfinite(cfg.budget.max_seconds))
    meta["budget"]["max_seconds"] = cfg.budget.max_seconds;
  else
    meta["budget"]["max_seconds"] = "unlimited";
  if (cfg.problem == "logistic") {
    meta["rho1"] = cfg.l1_radius;
    meta["mu"] = inst.mu_used;
    meta["standardize"] = cfg.standardize;
  }
  meta["baseline_stop"] = "fw-gap <= eps";
  meta["bb_variant"] = "tau = <dx,dg>/<dg,dg>, safeguarded [1e-10, 1e10]";

  ExperimentResult result;
  nlohmann::json results_json;
  for (const auto& tag : cfg.solvers) {
    SolverOutcome outcome;
    outcome.solver = tag;
    nlohmann::json r;
    try {
      const SolverReport<double> rep = dispatch(tag, inst, cfg);
      outcome.csv_path =
          (std::filesystem::path(cfg.out_dir) / (cfg.problem + "_" + lower(tag) + ".csv"))
              .string();
      write_trace_csv(outcome.csv_path, cfg.problem, rep);
      outcome.ok = true;
      r["reason"] = to_string(rep.reason);
      r["f_final"] = rep.f_final;
      r["lmo_calls"] = rep.lmo_calls;
      r["grad_evals"] = rep.grad_evals;
      r["hess_ops"] = rep.hess_ops;
      r["proj_calls"] = rep.proj_calls;
      r["trace_rows"] = rep.trace.size();
      r["csv"] = outcome.csv_path;
    } catch (const std::exception& e) {
      outcome.error = e.what();
      r["error"] = outcome.error;
      ++result.failures;
    }
    results_json[tag] = r;
    result.outcomes.push_back(outcome);
  }
  meta["results"] = results_json;

  result.metadata_path =
      (std::filesystem::path(cfg.out_dir) / "metadata.json").string();
  std::ofstream mf(result.metadata_path);
  mf << meta.dump(2) << '\n';
  return result;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not found: " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    entries[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return entries;
}

void apply_config_entries(const std::map<std::string, std::string>& entries,
                          ExperimentConfig* cfg) {
  for (const auto& [key, value] : entries) {
    if (key == "problem") cfg->problem = value;
    else if (key == "data") cfg->data_path = value;
    else if (key == "n") { cfg->n = std::stol(value); cfg->synthetic = true; }
    else if (key == "p") { cfg->p = std::stol(value); cfg->synthetic = true; }
    else if (key == "seed") {
      cfg->seed = std::stoull(value);
      cfg->seed_set = true;
      cfg->synthetic = true;
    }
    else if (key == "solvers") cfg->solvers = parse_solver_list(value);
    else if (key == "beta") cfg->params.beta = std::stod(value);
    else if (key == "sigma") cfg->params.sigma = std::stod(value);
    else if (key == "cbig") cfg->params.c_big = std::stod(value);
    else if (key == "c1") cfg->params.c_one = std::stod(value);
    else if (key == "delta") cfg->params.delta = std::stod(value);
    else if (key == "eps") cfg->params.eps = std::stod(value);
    else if (key == "max-outer") cfg->budget.max_outer = std::stol(value);
    else if (key == "max-lmo") cfg->budget.max_lmo = std::stol(value);
    else if (key == "max-seconds") cfg->budget.max_seconds = std::stod(value);
    else if (key == "rho1") cfg->l1_radius = std::stod(value);
    else if (key == "mu") cfg->mu = std::stod(value);
    else if (key == "standardize") cfg->standardize = (value == "1" || value == "true");
    else if (key == "out") cfg->out_dir = value;
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

}  // namespace nfw::bench
