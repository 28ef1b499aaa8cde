#ifndef NFW_TYPES_HPP
#define NFW_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace nfw {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using SparseMatrixX = Eigen::SparseMatrix<Scalar>;

}  // namespace nfw

#endif  // NFW_TYPES_HPP
