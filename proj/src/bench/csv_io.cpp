#include "nfw/bench/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nfw::bench {

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_matrix_csv: cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("load_matrix_csv: bad value at line " +
                                 std::to_string(line_no));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("load_matrix_csv: ragged row at line " +
                               std::to_string(line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("load_matrix_csv: empty file " + path);

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_matrix_csv: cannot open " + path);
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf;
      if (j + 1 < m.cols()) out << ',';
    }
    out << '\n';
  }
}

const char* const kTraceCsvHeader =
    "problem,solver,iter,time_s,fval,gap_proxy,gamma,eta,lambda,stage,alpha,"
    "lmo_calls_cum,grad_evals_cum,hess_ops_cum";

namespace {

void append_cell(std::string* line, double v) {
  line->push_back(',');
  if (std::isnan(v)) return;  // not-applicable fields stay empty
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line->append(buf);
}

}  // namespace

void write_trace_csv(const std::string& path, const std::string& problem,
                     const SolverReport<double>& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
  out << kTraceCsvHeader << '\n';
  for (const auto& row : report.trace) {
    std::string line = problem + "," + report.solver + "," + std::to_string(row.iter);
    append_cell(&line, row.time_s);
    append_cell(&line, row.fval);
    append_cell(&line, row.gap_proxy);
    append_cell(&line, row.gamma);
    append_cell(&line, row.eta);
    append_cell(&line, row.lambda);
    line.push_back(',');
    line.append(to_string(row.stage));
    append_cell(&line, row.alpha);
    line += "," + std::to_string(row.lmo_cum);
    line += "," + std::to_string(row.grad_cum);
    line += "," + std::to_string(row.hess_cum);
    out << line << '\n';
  }
}

}  // namespace nfw::bench
