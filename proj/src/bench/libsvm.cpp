#include "nfw/bench/libsvm.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace nfw::bench {

Dataset parse_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("parse_libsvm: cannot open " + path);

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> raw_labels;
  std::set<double> label_values;
  Eigen::Index max_col = 0;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    const auto fail = [&](const std::string& what) {
      throw DataError("parse_libsvm: line " + std::to_string(line_no) + ": " + what);
    };

    double label;
    if (!(ls >> label)) fail("missing label");
    raw_labels.push_back(label);
    label_values.insert(label);
    if (label_values.size() > 2) fail("more than two label values");

    const Eigen::Index row = static_cast<Eigen::Index>(raw_labels.size()) - 1;
    std::string tok;
    long prev_idx = 0;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) fail("expected idx:val, got '" + tok + "'");
      long idx;
      double val;
      try {
        std::size_t used = 0;
        idx = std::stol(tok.substr(0, colon), &used);
        if (used != colon) fail("bad feature index in '" + tok + "'");
        val = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) fail("bad feature value in '" + tok + "'");
      } catch (const DataError&) {
        throw;
      } catch (const std::exception&) {
        fail("bad token '" + tok + "'");
        return {};  // unreachable
      }
      if (idx < 1) fail("feature indices are 1-based");
      if (idx <= prev_idx) fail("non-monotone feature indices");
      prev_idx = idx;
      max_col = std::max<Eigen::Index>(max_col, idx);
      triplets.emplace_back(row, idx - 1, val);
    }
  }

  if (raw_labels.empty()) throw DataError("parse_libsvm: no samples in " + path);
  if (label_values.size() < 2)
    throw DataError("parse_libsvm: need two label values, found " +
                    std::to_string(label_values.size()));

  Dataset out;
  out.is_sparse = true;
  out.sparse.resize(static_cast<Eigen::Index>(raw_labels.size()), max_col);
  out.sparse.setFromTriplets(triplets.begin(), triplets.end());
  out.sparse.makeCompressed();

  const double low = *label_values.begin();
  out.labels.resize(static_cast<Eigen::Index>(raw_labels.size()));
  for (Eigen::Index i = 0; i < out.labels.size(); ++i)
    out.labels[i] = raw_labels[static_cast<std::size_t>(i)] == low ? -1.0 : 1.0;
  return out;
}

void write_libsvm(const std::string& path, const Dataset& data) {
  if (!data.is_sparse || !data.has_labels())
    throw DataError("write_libsvm: need a labeled sparse dataset");
  std::ofstream out(path);
  if (!out) throw DataError("write_libsvm: cannot open " + path);

  // Row-major iteration over a column-compressed matrix.
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows = data.sparse;
  char buf[64];
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out << (data.labels[i] > 0 ? "+1" : "-1");
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, i); it;
         ++it) {
      std::snprintf(buf, sizeof(buf), " %ld:%.17g", static_cast<long>(it.col()) + 1,
                    it.value());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace nfw::bench
