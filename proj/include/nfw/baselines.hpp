#ifndef NFW_BASELINES_HPP
#define NFW_BASELINES_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfw/feasible_set.hpp"
#include "nfw/oracle.hpp"
#include "nfw/report.hpp"

namespace nfw {

/// Knobs shared by the first-order comparison methods.
struct BaselineOptions {
  double gap_tol = 0;    // stop once the FW gap falls to this (0: run to budget)
  double ls_tol = 1e-10; // golden-section interval tolerance
};

namespace detail {

struct StopWatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

/// Golden-section search for the minimum of a unimodal phi over [0, hi].
/// Convex objectives along a segment are unimodal; +inf values (outside the
/// domain) are handled by comparison.
template <typename Scalar, typename Fn>
Scalar golden_section(Fn&& phi, Scalar hi, Scalar tol) {
  const Scalar invphi = Scalar(0.6180339887498949);
  Scalar a = Scalar(0), b = hi;
  Scalar x1 = b - invphi * (b - a);
  Scalar x2 = a + invphi * (b - a);
  Scalar f1 = phi(x1), f2 = phi(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = phi(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = phi(x2);
    }
  }
  return (a + b) / Scalar(2);
}

template <typename Scalar>
void push_baseline_row(SolverReport<Scalar>& rep, long iter, double time_s,
                       Scalar fval, Scalar gap, Scalar alpha, long lmo_inner) {
  TraceRow<Scalar> row;
  row.iter = iter;
  row.time_s = time_s;
  row.fval = fval;
  row.gap_proxy = gap;
  row.alpha = alpha;
  row.lmo_inner = lmo_inner;
  row.lmo_cum = rep.lmo_calls;
  row.grad_cum = rep.grad_evals;
  row.hess_cum = rep.hess_ops;
  rep.trace.push_back(row);
}

}  // namespace detail

/// Classic Frank-Wolfe with the open-loop step 2/(t+2).  Steps that would
/// leave the objective domain are shrunk geometrically and the event is
/// counted in the report.
template <typename Scalar>
SolverReport<Scalar> fw_standard(const ObjectiveOracle<Scalar>& f,
                                 const FeasibleSet<Scalar>& set,
                                 const VectorX<Scalar>& x0,
                                 const SolveBudget& budget = {},
                                 const BaselineOptions& opts = {}) {
  if (!set.contains(x0, Scalar(1e-9)) || !f.domain_check(x0))
    throw std::invalid_argument("fw_standard: infeasible start");
  detail::StopWatch watch;
  SolverReport<Scalar> rep;
  rep.solver = "FW";
  rep.reason = TerminationReason::kOuterBudget;

  VectorX<Scalar> x = x0;
  for (long t = 0; t < budget.max_outer; ++t) {
    if (rep.lmo_calls >= budget.max_lmo) {
      rep.reason = TerminationReason::kLmoBudget;
      break;
    }
    if (watch.seconds() >= budget.max_seconds) {
      rep.reason = TerminationReason::kTimeBudget;
      break;
    }
    const Scalar fx = f.eval(x);
    const VectorX<Scalar> g = f.grad(x);
    ++rep.grad_evals;
    const Vertex<Scalar> v = set.lmo(g);
    ++rep.lmo_calls;
    const Scalar gap = g.dot(x) - v.dot(g);

    Scalar tau = Scalar(2) / Scalar(t + 2);
    detail::push_baseline_row(rep, t, watch.seconds(), fx, gap, tau, 1L);
    if (gap <= Scalar(opts.gap_tol)) {
      rep.reason = TerminationReason::kConverged;
      break;
    }

    VectorX<Scalar> d = -x;
    d[v.index] += v.value;
    VectorX<Scalar> cand = x + tau * d;
    int shrink = 0;
    while (!f.domain_check(cand) && shrink < 80) {
      tau /= Scalar(2);
      cand = x + tau * d;
      ++shrink;
      ++rep.domain_retreats;
    }
    if (!f.domain_check(cand))
      throw std::runtime_error("fw_standard: could not shrink into the domain");
    x = std::move(cand);
  }

  rep.x_final = x;
  rep.f_final = f.eval(x);
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// Frank-Wolfe with a safeguarded exact line search: golden section over
/// [0, tau_max] with tau_max keeping the segment inside the domain, or the
/// closed form when the objective provides one (log-det).  A failed search
/// falls back to the open-loop step.
template <typename Scalar>
SolverReport<Scalar> fw_linesearch(const ObjectiveOracle<Scalar>& f,
                                   const FeasibleSet<Scalar>& set,
                                   const VectorX<Scalar>& x0,
                                   const SolveBudget& budget = {},
                                   const BaselineOptions& opts = {}) {
  if (!set.contains(x0, Scalar(1e-9)) || !f.domain_check(x0))
    throw std::invalid_argument("fw_linesearch: infeasible start");
  detail::StopWatch watch;
  SolverReport<Scalar> rep;
  rep.solver = "FW-LS";
  rep.reason = TerminationReason::kOuterBudget;

  VectorX<Scalar> x = x0;
  for (long t = 0; t < budget.max_outer; ++t) {
    if (rep.lmo_calls >= budget.max_lmo) {
      rep.reason = TerminationReason::kLmoBudget;
      break;
    }
    if (watch.seconds() >= budget.max_seconds) {
      rep.reason = TerminationReason::kTimeBudget;
      break;
    }
    const Scalar fx = f.eval(x);
    const VectorX<Scalar> g = f.grad(x);
    ++rep.grad_evals;
    const Vertex<Scalar> v = set.lmo(g);
    ++rep.lmo_calls;
    const Scalar gap = g.dot(x) - v.dot(g);

    VectorX<Scalar> d = -x;
    d[v.index] += v.value;

    Scalar tau;
    if (f.has_vertex_linesearch() && v.value == Scalar(1)) {
      tau = f.vertex_linesearch(x, v.index);
    } else {
      Scalar tau_max = std::min(Scalar(1), f.max_feasible_step(x, d) *
                                               Scalar(1 - 1e-9));
      auto phi = [&](Scalar s) { return f.eval(x + s * d); };
      tau = detail::golden_section<Scalar>(phi, tau_max, Scalar(opts.ls_tol));
      if (!std::isfinite(phi(tau)) || phi(tau) > fx) {
        tau = std::min(Scalar(2) / Scalar(t + 2), tau_max / Scalar(2));  // fallback
      }
    }

    detail::push_baseline_row(rep, t, watch.seconds(), fx, gap, tau, 1L);
    if (gap <= Scalar(opts.gap_tol)) {
      rep.reason = TerminationReason::kConverged;
      break;
    }
    x += tau * d;
    if (!f.domain_check(x))
      throw std::runtime_error("fw_linesearch: step left the domain");
  }

  rep.x_final = x;
  rep.f_final = f.eval(x);
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// Projected gradient with the Barzilai-Borwein step
/// tau_t = <dx, dg> / <dg, dg>, safeguarded into [1e-10, 1e10], accepted
/// non-monotonically, with geometric backtracking out of domain exits.
/// The trace's gap column is the FW gap computed diagnostically; the extra
/// LMO is not counted against the method.
template <typename Scalar>
SolverReport<Scalar> pg_bb(const ObjectiveOracle<Scalar>& f,
                           const FeasibleSet<Scalar>& set,
                           const VectorX<Scalar>& x0,
                           const SolveBudget& budget = {},
                           const BaselineOptions& opts = {}) {
  if (!set.supports_projection())
    throw std::logic_error("pg_bb: the feasible set provides no projection");
  if (!set.contains(x0, Scalar(1e-9)) || !f.domain_check(x0))
    throw std::invalid_argument("pg_bb: infeasible start");
  detail::StopWatch watch;
  SolverReport<Scalar> rep;
  rep.solver = "PG-BB";
  rep.reason = TerminationReason::kOuterBudget;

  VectorX<Scalar> x = x0;
  VectorX<Scalar> g = f.grad(x);
  ++rep.grad_evals;
  Scalar tau = Scalar(1) / std::max(g.template lpNorm<Eigen::Infinity>(), Scalar(1e-12));

  for (long t = 0; t < budget.max_outer; ++t) {
    if (watch.seconds() >= budget.max_seconds) {
      rep.reason = TerminationReason::kTimeBudget;
      break;
    }
    const Scalar fx = f.eval(x);
    const Scalar gap = g.dot(x) - set.lmo(g).dot(g);  // diagnostic only
    detail::push_baseline_row(rep, t, watch.seconds(), fx, gap, tau, 0L);
    if (gap <= Scalar(opts.gap_tol)) {
      rep.reason = TerminationReason::kConverged;
      break;
    }

    VectorX<Scalar> cand = set.project(x - tau * g);
    ++rep.proj_calls;
    int backtracks = 0;
    while (!f.domain_check(cand) && backtracks < 80) {
      tau /= Scalar(2);
      cand = set.project(x - tau * g);
      ++rep.proj_calls;
      ++backtracks;
      ++rep.domain_retreats;
    }
    if (!f.domain_check(cand))
      throw std::runtime_error("pg_bb: could not backtrack into the domain");

    VectorX<Scalar> g_new = f.grad(cand);
    ++rep.grad_evals;
    const VectorX<Scalar> dx = cand - x;
    const VectorX<Scalar> dg = g_new - g;
    const Scalar dgdg = dg.squaredNorm();
    if (dgdg > Scalar(0))
      tau = std::clamp(dx.dot(dg) / dgdg, Scalar(1e-10), Scalar(1e10));
    x = std::move(cand);
    g = std::move(g_new);
  }

  rep.x_final = x;
  rep.f_final = f.eval(x);
  rep.wall_seconds = watch.seconds();
  return rep;
}

/// Away-step Frank-Wolfe applied directly to the log-det objective over the
/// simplex, with the closed-form exact steps in both the toward and away
/// directions.  The iterate's support is its own active set.
template <typename Scalar>
SolverReport<Scalar> fw_away_dopt(const ObjectiveOracle<Scalar>& f,
                                  const FeasibleSet<Scalar>& set,
                                  const VectorX<Scalar>& x0,
                                  const SolveBudget& budget = {},
                                  const BaselineOptions& opts = {}) {
  if (!f.has_vertex_linesearch())
    throw std::logic_error("fw_away_dopt: objective lacks the closed-form step");
  if (!set.contains(x0, Scalar(1e-9)) || !f.domain_check(x0))
    throw std::invalid_argument("fw_away_dopt: infeasible start");
  detail::StopWatch watch;
  SolverReport<Scalar> rep;
  rep.solver = "FW-AWAY-DOPT";
  rep.reason = TerminationReason::kOuterBudget;

  ActiveSet<Scalar> active = set.decompose(x0);
  VectorX<Scalar> x = active.combination(set.dim());

  for (long t = 0; t < budget.max_outer; ++t) {
    if (rep.lmo_calls >= budget.max_lmo) {
      rep.reason = TerminationReason::kLmoBudget;
      break;
    }
    if (watch.seconds() >= budget.max_seconds) {
      rep.reason = TerminationReason::kTimeBudget;
      break;
    }
    const Scalar fx = f.eval(x);
    const VectorX<Scalar> g = f.grad(x);
    ++rep.grad_evals;
    const Vertex<Scalar> v = set.lmo(g);
    ++rep.lmo_calls;
    const Scalar gap = g.dot(x) - v.dot(g);

    std::size_t a_idx = 0;
    Scalar slope_aw = std::numeric_limits<Scalar>::infinity();
    if (active.size() > 1) {
      a_idx = active.argmax_inner(g);
      slope_aw = g.dot(x) - active.at(a_idx).vertex.dot(g);
    }

    Scalar alpha;
    if (-gap <= slope_aw) {
      alpha = f.vertex_linesearch(x, v.index);
      detail::push_baseline_row(rep, t, watch.seconds(), fx, gap, alpha, 1L);
      if (gap <= Scalar(opts.gap_tol)) {
        rep.reason = TerminationReason::kConverged;
        break;
      }
      active.scale(Scalar(1) - alpha);
      active.add(v, alpha);
    } else {
      const auto& away = active.at(a_idx);
      const Scalar wa = away.weight;
      const Scalar cap = wa / (Scalar(1) - wa);
      alpha = f.away_vertex_linesearch(x, away.vertex.index, cap);
      detail::push_baseline_row(rep, t, watch.seconds(), fx, gap, alpha, 1L);
      if (gap <= Scalar(opts.gap_tol)) {
        rep.reason = TerminationReason::kConverged;
        break;
      }
      if (alpha >= cap) {
        active.at(a_idx).weight = Scalar(0);
        active.scale(Scalar(1) / (Scalar(1) - wa));
      } else {
        active.scale(Scalar(1) + alpha);
        active.at(a_idx).weight -= alpha;
      }
    }
    active.prune_and_renormalize();
    x = active.combination(set.dim());
    if (!f.domain_check(x))
      throw std::runtime_error("fw_away_dopt: step left the domain");
  }

  rep.x_final = x;
  rep.f_final = f.eval(x);
  rep.wall_seconds = watch.seconds();
  return rep;
}

}  // namespace nfw

#endif  // NFW_BASELINES_HPP
