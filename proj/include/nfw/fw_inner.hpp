#ifndef NFW_FW_INNER_HPP
#define NFW_FW_INNER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nfw/active_set.hpp"
#include "nfw/feasible_set.hpp"
#include "nfw/oracle.hpp"
#include "nfw/types.hpp"

namespace nfw {

/// The quadratic model of the objective at an anchor point:
///   psi(u) = <grad, u - anchor> + 1/2 <H (u - anchor), u - anchor>,
/// with the Hessian H accessed through the oracle at the anchor.  `tol` is
/// the Frank-Wolfe gap threshold the subproblem solve must certify (the
/// outer loop passes eta^2).
template <typename Scalar>
struct QuadraticModel {
  VectorX<Scalar> grad;
  const ObjectiveOracle<Scalar>* oracle = nullptr;
  VectorX<Scalar> anchor;
  Scalar tol = Scalar(0);

  Index dim() const { return anchor.size(); }

  VectorX<Scalar> hess_apply(const VectorX<Scalar>& v) const {
    return oracle->hvp(anchor, v);
  }
  VectorX<Scalar> hess_col(Index j) const { return oracle->hess_col(anchor, j); }
  bool has_cols() const { return oracle->has_hess_cols(); }

  Scalar value(const VectorX<Scalar>& u) const {
    const VectorX<Scalar> d = u - anchor;
    return grad.dot(d) + Scalar(0.5) * hess_apply(d).dot(d);
  }
};

enum class InnerStatus {
  kConverged,     // gap <= tol certified with a fresh model gradient
  kFloorReached,  // gap at the floating-point noise floor, above tol
  kIterLimit,     // step budget exhausted; result carries the last iterate
};

template <typename Scalar>
struct InnerResult {
  VectorX<Scalar> u;        // approximate subproblem solution
  Scalar gap = Scalar(0);   // Frank-Wolfe gap at u
  long lmo_calls = 0;
  long hess_ops = 0;        // hvp and Hessian-column applications
  long iters = 0;           // steps taken
  VectorX<Scalar> Hd;       // H (u - anchor), reusable by the caller
  InnerStatus status = InnerStatus::kConverged;
  ActiveSet<Scalar> active;             // away-step variant only
  std::vector<Scalar> gap_history;      // filled when requested
};

struct InnerOptions {
  long max_iters = -1;       // <= 0: derive from the gap-decay bound
  bool record_gaps = false;
  int refresh_period = 512;  // fresh H(u - anchor) every this many steps
};

namespace detail {

/// Cheap largest-eigenvalue estimate by a few power iterations.
template <typename Scalar>
Scalar hessian_scale_estimate(const QuadraticModel<Scalar>& model, long* hess_ops) {
  VectorX<Scalar> v = VectorX<Scalar>::Ones(model.dim());
  v /= v.norm();
  Scalar lam = Scalar(0);
  for (int i = 0; i < 8; ++i) {
    VectorX<Scalar> Hv = model.hess_apply(v);
    ++*hess_ops;
    lam = Hv.norm();
    if (!(lam > Scalar(0))) return Scalar(0);
    v = Hv / lam;
  }
  return lam;
}

template <typename Scalar>
long default_max_iters(const QuadraticModel<Scalar>& model,
                       const FeasibleSet<Scalar>& set, long* hess_ops) {
  const Scalar lam = hessian_scale_estimate(model, hess_ops);
  const Scalar d2 = set.diameter() * set.diameter();
  const Scalar tol = std::max(model.tol, std::numeric_limits<Scalar>::min());
  const double target = 50.0 * std::ceil(6.0 * double(lam) * double(d2) / double(tol));
  return std::max<long>(1000, static_cast<long>(std::min(target, 1e6)));
}

/// Gap values this close to the rounding error of <g, u - v> cannot be
/// certified any further in this precision.
template <typename Scalar>
Scalar gap_floor(const VectorX<Scalar>& g, const VectorX<Scalar>& u, Scalar gv_abs) {
  const Scalar scale = g.cwiseAbs().dot(u.cwiseAbs()) + gv_abs;
  return Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale;
}

/// Exact line-search step length for the quadratic model along d, given the
/// (positive) directional gap -<g, d> and delta = <H d, d>; PSD models can
/// have flat directions, where the endpoint minimizes.
template <typename Scalar>
Scalar exact_step(Scalar neg_slope, Scalar delta, Scalar cap) {
  if (delta <= std::numeric_limits<Scalar>::epsilon() * neg_slope) return cap;
  return std::min(cap, neg_slope / delta);
}

}  // namespace detail

/// Plain Frank-Wolfe on the quadratic model with the exact step size
/// tau_t = min{1, V_t / ||v - u||_H^2}, stopping once the gap certifies
/// tol.  The model gradient g_t = grad + H(u^t - anchor) is updated
/// incrementally and refreshed periodically; success is declared only
/// after the gap re-checks under a freshly computed gradient.
template <typename Scalar>
InnerResult<Scalar> fw_quadratic(const QuadraticModel<Scalar>& model,
                                 const FeasibleSet<Scalar>& set,
                                 const InnerOptions& opts = {}) {
  if (!(model.tol >= Scalar(0)))
    throw std::invalid_argument("fw_quadratic: tol must be nonnegative");
  const Index p = model.dim();
  InnerResult<Scalar> res;

  VectorX<Scalar> u = model.anchor;
  VectorX<Scalar> w = VectorX<Scalar>::Zero(p);  // tracks H (u - anchor)
  VectorX<Scalar> g = model.grad;
  bool g_fresh = true;

  const bool use_cols = model.has_cols();
  VectorX<Scalar> H_anchor;
  if (use_cols) {
    H_anchor = model.hess_apply(model.anchor);
    ++res.hess_ops;
  }

  long max_iters = opts.max_iters;
  if (max_iters <= 0) max_iters = detail::default_max_iters(model, set, &res.hess_ops);

  auto refresh = [&] {
    w = model.hess_apply(u - model.anchor);
    ++res.hess_ops;
    g = model.grad + w;
    g_fresh = true;
  };

  for (res.iters = 0;; ++res.iters) {
    Vertex<Scalar> v = set.lmo(g);
    ++res.lmo_calls;
    Scalar gv = v.dot(g);
    Scalar V = g.dot(u) - gv;

    if (V <= std::max(model.tol, detail::gap_floor(g, u, std::abs(gv))) && !g_fresh) {
      refresh();
      v = set.lmo(g);
      ++res.lmo_calls;
      gv = v.dot(g);
      V = g.dot(u) - gv;
    }
    if (opts.record_gaps) res.gap_history.push_back(V);

    if (V <= std::max(model.tol, detail::gap_floor(g, u, std::abs(gv)))) {
      res.status = V <= model.tol ? InnerStatus::kConverged : InnerStatus::kFloorReached;
      res.gap = V;
      break;
    }
    if (res.iters >= max_iters) {
      res.status = InnerStatus::kIterLimit;
      res.gap = V;
      break;
    }

    // H (v - u) through a Hessian column when available, else one hvp.
    VectorX<Scalar> Hd;
    if (use_cols) {
      Hd = v.value * model.hess_col(v.index) - w - H_anchor;
    } else {
      VectorX<Scalar> d = -u;
      d[v.index] += v.value;
      Hd = model.hess_apply(d);
    }
    ++res.hess_ops;
    const Scalar delta = v.dot(Hd) - Hd.dot(u);
    const Scalar tau = detail::exact_step(V, delta, Scalar(1));

    u *= (Scalar(1) - tau);
    u[v.index] += tau * v.value;
    w += tau * Hd;
    g = model.grad + w;
    g_fresh = false;

    if (opts.refresh_period > 0 &&
        res.iters % opts.refresh_period == opts.refresh_period - 1)
      refresh();
  }

  res.u = std::move(u);
  res.Hd = std::move(w);
  return res;
}

/// Away-step Frank-Wolfe on the quadratic model.  The iterate is carried as
/// a convex combination of vertices; the weights are the primary state and
/// the dense point is rebuilt from them after every step, so the combination
/// and the materialized iterate cannot drift apart and feasibility is exact.
///
/// `warm` may be empty, in which case the run starts from the single vertex
/// returned by the LMO at the model gradient of the anchor.
template <typename Scalar>
InnerResult<Scalar> fw_away_quadratic(const QuadraticModel<Scalar>& model,
                                      const FeasibleSet<Scalar>& set,
                                      const ActiveSet<Scalar>& warm,
                                      const InnerOptions& opts = {}) {
  if (!(model.tol >= Scalar(0)))
    throw std::invalid_argument("fw_away_quadratic: tol must be nonnegative");
  const Index p = model.dim();
  InnerResult<Scalar> res;

  const bool use_cols = model.has_cols();
  VectorX<Scalar> H_anchor;
  auto anchor_product = [&]() -> const VectorX<Scalar>& {
    if (H_anchor.size() == 0) {
      H_anchor = model.hess_apply(model.anchor);
      ++res.hess_ops;
    }
    return H_anchor;
  };

  ActiveSet<Scalar> active = warm;
  if (active.empty()) {
    active.add(set.lmo(model.grad), Scalar(1));
    ++res.lmo_calls;
  }
  VectorX<Scalar> u = active.combination(p);
  VectorX<Scalar> w;
  if (u == model.anchor) {
    w = VectorX<Scalar>::Zero(p);
  } else {
    w = model.hess_apply(u - model.anchor);
    ++res.hess_ops;
  }
  VectorX<Scalar> g = model.grad + w;
  bool g_fresh = true;

  long max_iters = opts.max_iters;
  if (max_iters <= 0) max_iters = detail::default_max_iters(model, set, &res.hess_ops);

  auto refresh = [&] {
    w = model.hess_apply(u - model.anchor);
    ++res.hess_ops;
    g = model.grad + w;
    g_fresh = true;
  };

  for (res.iters = 0;; ++res.iters) {
    Vertex<Scalar> v = set.lmo(g);
    ++res.lmo_calls;
    Scalar gv = v.dot(g);
    Scalar V = g.dot(u) - gv;

    if (V <= std::max(model.tol, detail::gap_floor(g, u, std::abs(gv))) && !g_fresh) {
      refresh();
      v = set.lmo(g);
      ++res.lmo_calls;
      gv = v.dot(g);
      V = g.dot(u) - gv;
    }
    if (opts.record_gaps) res.gap_history.push_back(V);

    if (V <= std::max(model.tol, detail::gap_floor(g, u, std::abs(gv)))) {
      res.status = V <= model.tol ? InnerStatus::kConverged : InnerStatus::kFloorReached;
      res.gap = V;
      break;
    }
    if (res.iters >= max_iters) {
      res.status = InnerStatus::kIterLimit;
      res.gap = V;
      break;
    }

    const Scalar slope_fw = -V;  // <g, v - u>
    std::size_t a_idx = 0;
    Scalar slope_aw = std::numeric_limits<Scalar>::infinity();
    if (active.size() > 1) {
      a_idx = active.argmax_inner(g);
      slope_aw = g.dot(u) - active.at(a_idx).vertex.dot(g);  // <g, u - a>
    }

    if (slope_fw <= slope_aw) {
      // FW step toward v, capped at 1.
      VectorX<Scalar> Hd;
      if (use_cols) {
        Hd = v.value * model.hess_col(v.index) - w - anchor_product();
      } else {
        VectorX<Scalar> d = -u;
        d[v.index] += v.value;
        Hd = model.hess_apply(d);
      }
      ++res.hess_ops;
      const Scalar delta = v.dot(Hd) - Hd.dot(u);
      const Scalar tau = detail::exact_step(V, delta, Scalar(1));
      active.scale(Scalar(1) - tau);
      active.add(v, tau);
      w += tau * Hd;
    } else {
      // Away step from the worst active vertex, capped at w_a / (1 - w_a);
      // a capped step drops the vertex, done exactly on the weights.
      const Vertex<Scalar> a = active.at(a_idx).vertex;
      VectorX<Scalar> Hd;
      if (use_cols) {
        Hd = w + anchor_product() - a.value * model.hess_col(a.index);
      } else {
        VectorX<Scalar> d = u;
        d[a.index] -= a.value;
        Hd = model.hess_apply(d);
      }
      ++res.hess_ops;
      const Scalar wa = active.at(a_idx).weight;
      const Scalar one_m = Scalar(1) - wa;
      const Scalar cap = one_m > Scalar(0) ? wa / one_m
                                           : std::numeric_limits<Scalar>::infinity();
      const Scalar delta = Hd.dot(u) - a.dot(Hd);
      const Scalar tau = detail::exact_step(-slope_aw, delta, cap);
      if (tau >= cap) {
        // Drop step: remove a and renormalize the remaining weights.
        active.at(a_idx).weight = Scalar(0);
        active.scale(Scalar(1) / one_m);
        w += cap * Hd;
      } else {
        active.scale(Scalar(1) + tau);
        active.at(a_idx).weight -= tau;
        w += tau * Hd;
      }
    }
    active.prune_and_renormalize();
    u = active.combination(p);
    g = model.grad + w;
    g_fresh = false;

    if (opts.refresh_period > 0 &&
        res.iters % opts.refresh_period == opts.refresh_period - 1)
      refresh();
  }

  res.u = std::move(u);
  res.Hd = std::move(w);
  res.active = std::move(active);
  return res;
}

/// Frank-Wolfe gap of the quadratic model at u, from one LMO call:
///   max_{s in X} <grad Q(u), u - s>.
/// u is an eta-solution of the model exactly when this is <= eta^2.
template <typename Scalar>
Scalar certify_eta_solution(const QuadraticModel<Scalar>& model,
                            const FeasibleSet<Scalar>& set,
                            const VectorX<Scalar>& u) {
  const VectorX<Scalar> g = model.grad + model.hess_apply(u - model.anchor);
  const Vertex<Scalar> v = set.lmo(g);
  return g.dot(u) - v.dot(g);
}

}  // namespace nfw

#endif  // NFW_FW_INNER_HPP
