#ifndef NFW_OBJECTIVES_LOGISTIC_HPP
#define NFW_OBJECTIVES_LOGISTIC_HPP

#include <cmath>
#include <stdexcept>

#include "nfw/oracle.hpp"
#include "nfw/types.hpp"

namespace nfw {

/// Stable softplus ln(1 + exp(z)) = max(z, 0) + log1p(exp(-|z|)).
template <typename Scalar>
Scalar softplus(Scalar z) {
  return std::max(z, Scalar(0)) + std::log1p(std::exp(-std::abs(z)));
}

/// Ridge-regularized logistic loss
///   f(x) = (1/n) sum_i ln(1 + exp(z_i)) + (mu/2) ||x||^2,  z = A' x,
/// where column i of A is -y_i a_i.  Finite everywhere; mu > 0 keeps the
/// Hessian nondegenerate.  MatrixT may be dense or sparse.
///
/// The loss is self-concordant with parameter M ~ max_i ||a_i|| / sqrt(mu);
/// set_standardized(true) rescales all outputs by M^2/4 so the solver sees
/// a standard (M = 2) self-concordant function.
template <typename Scalar, typename MatrixT = MatrixX<Scalar>>
class LogisticObjective final : public ObjectiveOracle<Scalar> {
 public:
  LogisticObjective(MatrixT signed_features, Scalar mu)
      : A_(std::move(signed_features)), mu_(mu) {
    if (A_.rows() < 1 || A_.cols() < 1)
      throw std::invalid_argument("LogisticObjective: empty data");
    if (!(mu > Scalar(0)))
      throw std::invalid_argument("LogisticObjective: mu must be positive");
  }

  /// Builds A = [-y_1 a_1, ..., -y_n a_n] from samples (rows of `samples`)
  /// and labels in {-1, +1}.
  static LogisticObjective from_samples(const MatrixT& samples,
                                        const VectorX<Scalar>& labels,
                                        Scalar mu) {
    if (samples.rows() != labels.size())
      throw std::invalid_argument("LogisticObjective: label count mismatch");
    MatrixT a = samples.transpose();
    for (Index i = 0; i < labels.size(); ++i) {
      if (labels[i] != Scalar(-1) && labels[i] != Scalar(1))
        throw std::invalid_argument("LogisticObjective: labels must be -1/+1");
    }
    MatrixT scaled = a * (-labels).asDiagonal();
    return LogisticObjective(std::move(scaled), mu);
  }

  Index dim() const override { return A_.rows(); }
  Index num_samples() const { return A_.cols(); }
  Scalar mu() const { return mu_; }

  /// Scale putting the objective in standard self-concordant form:
  /// M^2/4 with M = max_i ||a_i|| / sqrt(mu).
  Scalar standardization_scale() const {
    Scalar max_sq = Scalar(0);
    for (Index i = 0; i < A_.cols(); ++i)
      max_sq = std::max(max_sq, Scalar(A_.col(i).squaredNorm()));
    return max_sq / (Scalar(4) * mu_);
  }

  void set_standardized(bool on) {
    scale_ = on ? standardization_scale() : Scalar(1);
  }
  Scalar scale() const { return scale_; }

  Scalar eval(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    Scalar loss = Scalar(0);
    for (Index i = 0; i < z_.size(); ++i) loss += softplus(z_[i]);
    return scale_ * (loss / Scalar(z_.size()) + Scalar(0.5) * mu_ * x.squaredNorm());
  }

  VectorX<Scalar> grad(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    return scale_ * ((A_ * s_) / Scalar(z_.size()) + mu_ * x);
  }

  VectorX<Scalar> hvp(const VectorX<Scalar>& x,
                      const VectorX<Scalar>& v) const override {
    refresh_cache(x);
    VectorX<Scalar> w = A_.transpose() * v;
    w.array() *= s_.array() * (Scalar(1) - s_.array());
    return scale_ * ((A_ * w) / Scalar(z_.size()) + mu_ * v);
  }

  bool domain_check(const VectorX<Scalar>& x) const override {
    return x.size() == A_.rows() && x.allFinite();
  }

 private:
  void refresh_cache(const VectorX<Scalar>& x) const {
    if (x.size() != A_.rows())
      throw std::invalid_argument("LogisticObjective: dimension mismatch");
    if (cache_set_ && x_ == x) return;
    x_ = x;
    z_ = A_.transpose() * x;
    s_.resize(z_.size());
    for (Index i = 0; i < z_.size(); ++i)
      s_[i] = Scalar(1) / (Scalar(1) + std::exp(-z_[i]));
    cache_set_ = true;
  }

  MatrixT A_;  // p x n, column i = -y_i a_i
  Scalar mu_;
  Scalar scale_ = Scalar(1);
  mutable VectorX<Scalar> x_, z_, s_;
  mutable bool cache_set_ = false;
};

}  // namespace nfw

#endif  // NFW_OBJECTIVES_LOGISTIC_HPP
