#ifndef NFW_FEASIBLE_SET_HPP
#define NFW_FEASIBLE_SET_HPP

#include <cmath>
#include <stdexcept>

#include "nfw/active_set.hpp"
#include "nfw/projections.hpp"
#include "nfw/types.hpp"
#include "nfw/vertex.hpp"

namespace nfw {

/// A compact convex feasible set exposing a linear minimization oracle.
/// Implementations hold immutable data after construction and may be shared
/// read-only across concurrent solver runs.
template <typename Scalar>
class FeasibleSet {
 public:
  virtual ~FeasibleSet() = default;

  virtual Index dim() const = 0;

  /// argmin_{u in X} <g, u>, returned as a sparse vertex.
  virtual Vertex<Scalar> lmo(const VectorX<Scalar>& g) const = 0;

  /// Euclidean diameter max_{x,y in X} ||x - y||.
  virtual Scalar diameter() const = 0;

  virtual bool contains(const VectorX<Scalar>& x, Scalar tol) const = 0;

  virtual bool supports_projection() const { return false; }

  /// Euclidean projection; used by projection-based baselines only.
  virtual VectorX<Scalar> project(const VectorX<Scalar>& y) const {
    (void)y;
    throw std::logic_error("FeasibleSet: projection not supported");
  }

  /// A canonical interior starting point.
  virtual VectorX<Scalar> default_start() const = 0;

  /// Exact vertex decomposition of a feasible point (for warm-started
  /// away-step runs).
  virtual ActiveSet<Scalar> decompose(const VectorX<Scalar>& x) const = 0;
};

namespace detail {

template <typename Scalar>
void require_finite(const VectorX<Scalar>& g) {
  if (!g.allFinite()) throw std::invalid_argument("lmo: non-finite entries in input");
}

}  // namespace detail

/// argmin over the unit simplex: the coordinate vertex of the smallest
/// gradient entry, lowest index on ties.
template <typename Scalar>
Vertex<Scalar> lmo_simplex(const VectorX<Scalar>& g) {
  detail::require_finite(g);
  Index best = 0;
  for (Index i = 1; i < g.size(); ++i)
    if (g[i] < g[best]) best = i;
  return Vertex<Scalar>{best, Scalar(1), g.size()};
}

/// argmin over { ||x||_1 <= rho }: -rho sign(g_j) e_j at the largest |g_j|,
/// lowest index on ties, sign(0) taken as +1.
template <typename Scalar>
Vertex<Scalar> lmo_l1ball(const VectorX<Scalar>& g, Scalar rho) {
  detail::require_finite(g);
  Index best = 0;
  Scalar best_abs = std::abs(g[0]);
  for (Index i = 1; i < g.size(); ++i) {
    const Scalar a = std::abs(g[i]);
    if (a > best_abs) {
      best = i;
      best_abs = a;
    }
  }
  const Scalar sign = g[best] < Scalar(0) ? Scalar(-1) : Scalar(1);
  return Vertex<Scalar>{best, -rho * sign, g.size()};
}

/// The unit probability simplex.
template <typename Scalar>
class Simplex final : public FeasibleSet<Scalar> {
 public:
  explicit Simplex(Index dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("Simplex: dim must be positive");
  }

  Index dim() const override { return dim_; }

  Vertex<Scalar> lmo(const VectorX<Scalar>& g) const override {
    return lmo_simplex(g);
  }

  Scalar diameter() const override { return std::sqrt(Scalar(2)); }

  bool contains(const VectorX<Scalar>& x, Scalar tol) const override {
    if (x.size() != dim_) return false;
    return x.minCoeff() >= -tol && std::abs(x.sum() - Scalar(1)) <= tol;
  }

  bool supports_projection() const override { return true; }

  VectorX<Scalar> project(const VectorX<Scalar>& y) const override {
    return project_simplex(y);
  }

  VectorX<Scalar> default_start() const override {
    return VectorX<Scalar>::Constant(dim_, Scalar(1) / Scalar(dim_));
  }

  ActiveSet<Scalar> decompose(const VectorX<Scalar>& x) const override {
    ActiveSet<Scalar> as;
    for (Index i = 0; i < dim_; ++i)
      if (x[i] > Scalar(0)) as.add(Vertex<Scalar>{i, Scalar(1), dim_}, x[i]);
    return as;
  }

 private:
  Index dim_;
};

/// The ell1 ball of radius rho.
template <typename Scalar>
class L1Ball final : public FeasibleSet<Scalar> {
 public:
  L1Ball(Index dim, Scalar rho) : dim_(dim), rho_(rho) {
    if (dim < 1) throw std::invalid_argument("L1Ball: dim must be positive");
    if (!(rho > Scalar(0))) throw std::invalid_argument("L1Ball: rho must be positive");
  }

  Index dim() const override { return dim_; }
  Scalar radius() const { return rho_; }

  Vertex<Scalar> lmo(const VectorX<Scalar>& g) const override {
    return lmo_l1ball(g, rho_);
  }

  Scalar diameter() const override { return Scalar(2) * rho_; }

  bool contains(const VectorX<Scalar>& x, Scalar tol) const override {
    if (x.size() != dim_) return false;
    return x.template lpNorm<1>() <= rho_ + tol;
  }

  bool supports_projection() const override { return true; }

  VectorX<Scalar> project(const VectorX<Scalar>& y) const override {
    return project_l1ball(y, rho_);
  }

  VectorX<Scalar> default_start() const override {
    return VectorX<Scalar>::Zero(dim_);
  }

  ActiveSet<Scalar> decompose(const VectorX<Scalar>& x) const override {
    ActiveSet<Scalar> as;
    Scalar mass = Scalar(0);
    for (Index i = 0; i < dim_; ++i) {
      if (x[i] != Scalar(0)) {
        const Scalar sign = x[i] < Scalar(0) ? Scalar(-1) : Scalar(1);
        const Scalar w = std::abs(x[i]) / rho_;
        as.add(Vertex<Scalar>{i, sign * rho_, dim_}, w);
        mass += w;
      }
    }
    // Spread any leftover mass over an antipodal vertex pair so the weights
    // sum to one without moving the point.
    const Scalar slack = Scalar(1) - mass;
    if (slack > Scalar(0) || as.empty()) {
      as.add(Vertex<Scalar>{0, rho_, dim_}, slack / Scalar(2));
      as.add(Vertex<Scalar>{0, -rho_, dim_}, slack / Scalar(2));
    }
    return as;
  }

 private:
  Index dim_;
  Scalar rho_;
};

}  // namespace nfw

#endif  // NFW_FEASIBLE_SET_HPP
