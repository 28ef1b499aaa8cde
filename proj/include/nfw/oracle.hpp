#ifndef NFW_ORACLE_HPP
#define NFW_ORACLE_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfw/types.hpp"

namespace nfw {

/// Structured access to a self-concordant objective: values, gradients and
/// Hessian-vector products.  The Hessian is never materialized; objectives
/// with cheap Hessian columns (log-det) advertise them so the inner solver
/// can work one column at a time.
///
/// Implementations may keep per-point caches keyed on the query point; the
/// caches make instances non-shareable across concurrent solver runs.
template <typename Scalar>
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;

  virtual Index dim() const = 0;

  /// f(x); +infinity outside the domain so line searches can reject.
  virtual Scalar eval(const VectorX<Scalar>& x) const = 0;

  virtual VectorX<Scalar> grad(const VectorX<Scalar>& x) const = 0;

  /// Hessian-vector product (nabla^2 f(x)) v.
  virtual VectorX<Scalar> hvp(const VectorX<Scalar>& x,
                              const VectorX<Scalar>& v) const = 0;

  virtual bool domain_check(const VectorX<Scalar>& x) const = 0;

  virtual bool has_hess_cols() const { return false; }

  /// Column j of the Hessian at x; the default falls back to an hvp with
  /// the coordinate vector.
  virtual VectorX<Scalar> hess_col(const VectorX<Scalar>& x, Index j) const {
    VectorX<Scalar> e = VectorX<Scalar>::Zero(dim());
    e[j] = Scalar(1);
    return hvp(x, e);
  }

  /// Largest step tau with x + tau d inside the domain; +infinity for
  /// full-domain objectives.  Line-searching methods cap their step at this.
  virtual Scalar max_feasible_step(const VectorX<Scalar>& x,
                                   const VectorX<Scalar>& d) const {
    (void)x;
    (void)d;
    return std::numeric_limits<Scalar>::infinity();
  }

  /// Closed-form exact line search along the segment toward coordinate
  /// vertex e_j, when the objective admits one; away_vertex_linesearch is
  /// the same for the ray x + tau (x - e_j), capped at `cap`.
  virtual bool has_vertex_linesearch() const { return false; }
  virtual Scalar vertex_linesearch(const VectorX<Scalar>& x, Index j) const {
    (void)x;
    (void)j;
    throw std::logic_error("ObjectiveOracle: no closed-form vertex line search");
  }
  virtual Scalar away_vertex_linesearch(const VectorX<Scalar>& x, Index j,
                                        Scalar cap) const {
    (void)x;
    (void)j;
    (void)cap;
    throw std::logic_error("ObjectiveOracle: no closed-form vertex line search");
  }
};

template <typename Scalar>
struct LocalNormResult {
  Scalar norm;          // ||v||_x = sqrt(v' H v)
  VectorX<Scalar> Hv;   // cached product for reuse
};

/// Local norm ||v||_x induced by the Hessian at x, returning the product
/// H v alongside so callers pay one hvp for both.  Curvature below
/// -1e-10 relative signals a broken Hessian and throws.
template <typename Scalar>
LocalNormResult<Scalar> local_norm(const ObjectiveOracle<Scalar>& f,
                                   const VectorX<Scalar>& x,
                                   const VectorX<Scalar>& v) {
  LocalNormResult<Scalar> r;
  r.Hv = f.hvp(x, v);
  Scalar q = r.Hv.dot(v);
  const Scalar scale = r.Hv.norm() * v.norm();
  if (q < Scalar(0)) {
    if (q < -Scalar(1e-10) * std::max(scale, Scalar(1)))
      throw std::runtime_error("local_norm: Hessian quadratic form is negative");
    q = Scalar(0);
  }
  r.norm = std::sqrt(q);
  return r;
}

}  // namespace nfw

#endif  // NFW_ORACLE_HPP
