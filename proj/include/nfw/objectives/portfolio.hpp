#ifndef NFW_OBJECTIVES_PORTFOLIO_HPP
#define NFW_OBJECTIVES_PORTFOLIO_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfw/oracle.hpp"
#include "nfw/types.hpp"

namespace nfw {

/// Log-utility portfolio objective f(x) = -sum_i ln(a_i' x) over the return
/// matrix A (rows a_i').  Domain: A x > 0 componentwise.
template <typename Scalar>
class PortfolioObjective final : public ObjectiveOracle<Scalar> {
 public:
  explicit PortfolioObjective(MatrixX<Scalar> returns) : A_(std::move(returns)) {
    if (A_.rows() < 1 || A_.cols() < 1)
      throw std::invalid_argument("PortfolioObjective: empty return matrix");
  }

  Index dim() const override { return A_.cols(); }
  Index num_scenarios() const { return A_.rows(); }
  const MatrixX<Scalar>& returns() const { return A_; }

  Scalar eval(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    if (!cache_valid_)
      return std::numeric_limits<Scalar>::infinity();
    Scalar f = Scalar(0);
    for (Index i = 0; i < r_.size(); ++i) f -= std::log(r_[i]);
    return f;
  }

  VectorX<Scalar> grad(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    require_domain();
    return -(A_.transpose() * r_.cwiseInverse());
  }

  VectorX<Scalar> hvp(const VectorX<Scalar>& x,
                      const VectorX<Scalar>& v) const override {
    refresh_cache(x);
    require_domain();
    const VectorX<Scalar> Av = A_ * v;
    return A_.transpose() * (Av.array() / r_.array().square()).matrix();
  }

  bool domain_check(const VectorX<Scalar>& x) const override {
    refresh_cache(x);
    return cache_valid_;
  }

  bool has_hess_cols() const override { return true; }

  VectorX<Scalar> hess_col(const VectorX<Scalar>& x, Index j) const override {
    refresh_cache(x);
    require_domain();
    return A_.transpose() * (A_.col(j).array() / r_.array().square()).matrix();
  }

  /// Largest step tau keeping x + tau d inside {A x > 0}; +inf if the whole
  /// ray stays interior.
  Scalar max_feasible_step(const VectorX<Scalar>& x,
                           const VectorX<Scalar>& d) const override {
    refresh_cache(x);
    require_domain();
    const VectorX<Scalar> Ad = A_ * d;
    Scalar tmax = std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < Ad.size(); ++i)
      if (Ad[i] < Scalar(0)) tmax = std::min(tmax, -r_[i] / Ad[i]);
    return tmax;
  }

  /// A data-derived lower bound on the optimal value: a_i' x <= max_j A_ij
  /// over the simplex, so f >= -sum_i ln(max_j A_ij).
  Scalar fstar_lower_bound() const {
    Scalar b = Scalar(0);
    for (Index i = 0; i < A_.rows(); ++i) b -= std::log(A_.row(i).maxCoeff());
    return b;
  }

 private:
  void refresh_cache(const VectorX<Scalar>& x) const {
    if (x.size() != A_.cols())
      throw std::invalid_argument("PortfolioObjective: dimension mismatch");
    if (cache_set_ && x_ == x) return;
    x_ = x;
    r_ = A_ * x;
    cache_set_ = true;
    cache_valid_ = (r_.minCoeff() > Scalar(0)) && r_.allFinite();
  }

  void require_domain() const {
    if (!cache_valid_)
      throw std::domain_error("PortfolioObjective: point outside {Ax > 0}");
  }

  MatrixX<Scalar> A_;
  mutable VectorX<Scalar> x_, r_;
  mutable bool cache_set_ = false;
  mutable bool cache_valid_ = false;
};

}  // namespace nfw

#endif  // NFW_OBJECTIVES_PORTFOLIO_HPP
