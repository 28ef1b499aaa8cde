#ifndef NFW_BENCH_EXPERIMENT_HPP
#define NFW_BENCH_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nfw/report.hpp"
#include "nfw/sc_core.hpp"

namespace nfw::bench {

inline constexpr const char* kVersion = "0.1.0";

/// Tags understood by run_experiment.  "PN" and "APG-LSRS" are reserved in
/// the CSV schema for merging externally produced traces and are rejected
/// here.
const std::vector<std::string>& known_solver_tags();

/// One benchmark run: a problem, one data source (synthetic generator or
/// file), a list of solvers and shared parameters/budgets.
struct ExperimentConfig {
  std::string problem;  // portfolio | dopt | logistic

  std::string data_path;    // file source...
  bool synthetic = false;   // ...or synthetic generator; exactly one of the two
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  double l1_radius = 10.0;   // logistic ell1 budget rho1
  double mu = -1.0;          // logistic ridge weight; < 0 means 1/n
  bool standardize = false;  // rescale logistic into standard self-concordant form

  std::vector<std::string> solvers{"NFW", "FW", "FW-LS", "PG-BB"};
  SolverParams<double> params;
  SolveBudget budget;
  std::string out_dir;
};

struct SolverOutcome {
  std::string solver;
  std::string csv_path;
  std::string error;  // empty on success
  bool ok = false;
};

struct ExperimentResult {
  std::vector<SolverOutcome> outcomes;
  std::string metadata_path;
  int failures = 0;
};

/// Runs every configured solver on the instance, writing one trace CSV per
/// (problem, solver) and a metadata file with all parameters, seeds and
/// versions.  A solver error is recorded and the remaining solvers still
/// run.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Plain "key = value" config file (# starts a comment).  Keys match the
/// CLI flag names.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies parsed key/value pairs onto a config (unknown keys throw).
void apply_config_entries(const std::map<std::string, std::string>& entries,
                          ExperimentConfig* config);

/// Canonicalizes a comma-separated solver list ("nfw,fw-ls" -> tags).
std::vector<std::string> parse_solver_list(const std::string& csv);

}  // namespace nfw::bench

#endif  // NFW_BENCH_EXPERIMENT_HPP
