#ifndef NFW_BENCH_DATASET_HPP
#define NFW_BENCH_DATASET_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace nfw::bench {

/// A loaded or generated problem instance: a dense or column-compressed
/// sparse matrix, plus -1/+1 labels for classification data.
struct Dataset {
  Eigen::MatrixXd dense;
  Eigen::SparseMatrix<double> sparse;
  bool is_sparse = false;
  Eigen::VectorXd labels;  // empty unless classification

  Eigen::Index rows() const { return is_sparse ? sparse.rows() : dense.rows(); }
  Eigen::Index cols() const { return is_sparse ? sparse.cols() : dense.cols(); }
  bool has_labels() const { return labels.size() > 0; }
};

}  // namespace nfw::bench

#endif  // NFW_BENCH_DATASET_HPP
