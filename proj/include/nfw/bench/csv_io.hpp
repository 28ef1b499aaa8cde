#ifndef NFW_BENCH_CSV_IO_HPP
#define NFW_BENCH_CSV_IO_HPP

#include <Eigen/Core>
#include <string>

#include "nfw/report.hpp"

namespace nfw::bench {

/// Plain numeric CSV matrix, one row per line, no header.
Eigen::MatrixXd load_matrix_csv(const std::string& path);
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

/// Fixed trace schema shared by every solver:
///   problem,solver,iter,time_s,fval,gap_proxy,gamma,eta,lambda,stage,alpha,
///   lmo_calls_cum,grad_evals_cum,hess_ops_cum
/// NaN fields serialize as empty cells; time_s is the only
/// non-deterministic column.
extern const char* const kTraceCsvHeader;

void write_trace_csv(const std::string& path, const std::string& problem,
                     const SolverReport<double>& report);

}  // namespace nfw::bench

#endif  // NFW_BENCH_CSV_IO_HPP
