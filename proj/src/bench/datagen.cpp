#include "nfw/bench/datagen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <random>
#include <stdexcept>

namespace nfw::bench {

Dataset gen_portfolio(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  if (n < 1 || p < 1)
    throw std::invalid_argument("gen_portfolio: n and p must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Dataset out;
  out.dense.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      for (Eigen::Index j = 0; j < p; ++j)
        out.dense(i, j) = 1.0 + 0.1 * normal(rng);
      if (out.dense.row(i).sum() > 0) break;  // keeps (A e/p)_i > 0
    }
    if (!(out.dense.row(i).sum() > 0))
      throw std::runtime_error("gen_portfolio: could not draw a usable row");
  }
  return out;
}

Dataset gen_dopt_points(Eigen::Index n, Eigen::Index p, std::uint64_t seed,
                        const Eigen::MatrixXd& covariance) {
  if (n < 1) throw std::invalid_argument("gen_dopt_points: n must be positive");
  if (p < n) throw std::invalid_argument("gen_dopt_points: need p >= n points");

  Eigen::MatrixXd chol;  // Sigma = chol chol'
  if (covariance.size() > 0) {
    if (covariance.rows() != n || covariance.cols() != n)
      throw std::invalid_argument("gen_dopt_points: covariance must be n x n");
    Eigen::LLT<Eigen::MatrixXd> llt(covariance);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("gen_dopt_points: covariance not positive definite");
    chol = llt.matrixL();
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Dataset out;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd z(n, p);
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index i = 0; i < n; ++i) z(i, j) = normal(rng);
    out.dense = chol.size() > 0 ? (chol * z).eval() : z;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(out.dense);
    if (qr.rank() == n) return out;
  }
  throw std::runtime_error("gen_dopt_points: repeated rank-deficient draws");
}

}  // namespace nfw::bench
