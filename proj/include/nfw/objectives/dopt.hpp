#ifndef NFW_OBJECTIVES_DOPT_HPP
#define NFW_OBJECTIVES_DOPT_HPP

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfw/oracle.hpp"
#include "nfw/types.hpp"

namespace nfw {

/// D-optimal design objective f(x) = -log det(A Diag(x) A') over the point
/// matrix A (columns a_j in R^n).  Each query point caches the Cholesky
/// factor L of M(x) = A Diag(x) A' and B = L^{-1} A; everything else is
/// read off B:
///   grad_j      = -||b_j||^2
///   hess(j, k)  = (b_j' b_k)^2
/// so a Hessian column costs O(np) and the Hessian itself is never formed.
template <typename Scalar>
class DOptObjective final : public ObjectiveOracle<Scalar> {
 public:
  explicit DOptObjective(MatrixX<Scalar> points) : A_(std::move(points)) {
    if (A_.rows() < 1 || A_.cols() < A_.rows())
      throw std::invalid_argument("DOptObjective: need p >= n points");
  }

  Index dim() const override { return A_.cols(); }
  Index space_dim() const { return A_.rows(); }
  const MatrixX<Scalar>& points() const { return A_; }

  Scalar eval(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    if (!cache_valid_)
      return std::numeric_limits<Scalar>::infinity();
    return neg_logdet_;
  }

  VectorX<Scalar> grad(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    require_domain();
    return -B_.colwise().squaredNorm().transpose();
  }

  VectorX<Scalar> hvp(const VectorX<Scalar>& x,
                      const VectorX<Scalar>& v) const override {
    refresh_cache(x);
    require_domain();
    // W = B Diag(v) B', then (H v)_j = b_j' W b_j, all O(n^2 p).
    const Index n = A_.rows();
    MatrixX<Scalar> Bv = B_.array().rowwise() * v.transpose().array();
    MatrixX<Scalar> W(n, n);
    W.noalias() = Bv * B_.transpose();
    MatrixX<Scalar> WB(n, B_.cols());
    WB.noalias() = W * B_;
    return (B_.cwiseProduct(WB)).colwise().sum().transpose();
  }

  bool domain_check(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    return cache_valid_;
  }

  bool has_hess_cols() const override { return true; }

  VectorX<Scalar> hess_col(const VectorX<Scalar>& x, Index j) const override {
    refresh_cache(x);
    require_domain();
    VectorX<Scalar> w = B_.transpose() * B_.col(j);
    return w.array().square();
  }

  /// kappa_j = a_j' M(x)^{-1} a_j, the leverage of point j.
  Scalar leverage(const VectorX<Scalar>& x, Index j) const {
    refresh_cache(x);
    require_domain();
    return B_.col(j).squaredNorm();
  }

  /// Exact minimizer of tau -> f((1 - tau) x + tau e_j) over [0, 1].
  /// Along this segment det scales as (1-tau)^{n-1} (1 - tau + tau kappa_j),
  /// giving the closed form tau* = (kappa_j - n) / (n (kappa_j - 1)).
  Scalar linesearch_step(const VectorX<Scalar>& x, Index j) const {
    const Scalar n = Scalar(A_.rows());
    const Scalar kappa = leverage(x, j);
    if (!(kappa - n > Scalar(0))) return Scalar(0);  // nonimproving or stationary
    const Scalar tau = (kappa - n) / (n * (kappa - Scalar(1)));
    return std::min(tau, Scalar(1));
  }

  bool has_vertex_linesearch() const override { return true; }

  Scalar vertex_linesearch(const VectorX<Scalar>& x, Index j) const override {
    return linesearch_step(x, j);
  }

  /// Exact step for the away ray x + tau (x - e_j): the objective decreases
  /// to tau* = (n - kappa_j) / (n (kappa_j - 1)) when kappa_j in (1, n),
  /// and decreases all the way to the cap when kappa_j <= 1.
  Scalar away_vertex_linesearch(const VectorX<Scalar>& x, Index j,
                                Scalar cap) const override {
    const Scalar n = Scalar(A_.rows());
    const Scalar kappa = leverage(x, j);
    if (!(kappa > Scalar(1))) return cap;
    if (!(kappa < n)) return Scalar(0);  // not a descent direction
    return std::min(cap, (n - kappa) / (n * (kappa - Scalar(1))));
  }

 private:
  void refresh_cache(const VectorX<Scalar>& x) const {
    if (x.size() != A_.cols())
      throw std::invalid_argument("DOptObjective: dimension mismatch");
    if (cache_set_ && x_ == x) return;
    x_ = x;
    cache_set_ = true;
    cache_valid_ = false;
    MatrixX<Scalar> Ax = A_.array().rowwise() * x.transpose().array();
    MatrixX<Scalar> M(A_.rows(), A_.rows());
    M.noalias() = Ax * A_.transpose();
    llt_.compute(M);
    if (llt_.info() != Eigen::Success) return;
    const auto& L = llt_.matrixLLT();
    Scalar logdet = Scalar(0);
    for (Index i = 0; i < L.rows(); ++i) {
      if (!(L(i, i) > Scalar(0))) return;
      logdet += std::log(L(i, i));
    }
    neg_logdet_ = Scalar(-2) * logdet;
    B_ = llt_.matrixL().solve(A_);
    cache_valid_ = true;
  }

  void require_domain() const {
    if (!cache_valid_)
      throw std::domain_error("DOptObjective: A Diag(x) A' is not positive definite");
  }

  MatrixX<Scalar> A_;
  mutable VectorX<Scalar> x_;
  mutable Eigen::LLT<MatrixX<Scalar>> llt_;
  mutable MatrixX<Scalar> B_;
  mutable Scalar neg_logdet_ = Scalar(0);
  mutable bool cache_set_ = false;
  mutable bool cache_valid_ = false;
};

}  // namespace nfw

#endif  // NFW_OBJECTIVES_DOPT_HPP
