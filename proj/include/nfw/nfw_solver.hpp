#ifndef NFW_NFW_SOLVER_HPP
#define NFW_NFW_SOLVER_HPP

#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfw/fw_inner.hpp"
#include "nfw/oracle.hpp"
#include "nfw/report.hpp"
#include "nfw/sc_core.hpp"

namespace nfw {

/// Damped-step length alpha = delta (gamma^2 - eta^2) / (gamma^3 + gamma^2
/// - eta^2 gamma); guarantees alpha * gamma < delta < 1 so the iterate stays
/// in the self-concordant domain.
template <typename Scalar>
Scalar damped_step_size(Scalar gamma, Scalar eta, Scalar delta) {
  if (!(eta >= Scalar(0)) || !(gamma > eta))
    throw std::domain_error("damped_step_size: requires gamma > eta >= 0");
  if (!(delta > Scalar(0)) || !(delta < Scalar(1)))
    throw std::domain_error("damped_step_size: requires delta in (0, 1)");
  const Scalar g2 = gamma * gamma;
  const Scalar e2 = eta * eta;
  return delta * (g2 - e2) / (gamma * g2 + g2 - e2 * gamma);
}

/// Guaranteed-descent inequality for a damped step,
///   f_after <= f_before - delta omega((gamma^2 - eta^2) / gamma),
/// with a 1e-9 absolute slack; used as a runtime assertion in debug builds.
template <typename Scalar>
bool damped_descent_check(Scalar f_before, Scalar f_after, Scalar gamma,
                          Scalar eta, Scalar delta) {
  const Scalar drop = delta * sc::omega((gamma * gamma - eta * eta) / gamma);
  return f_after <= f_before - drop + Scalar(1e-9);
}

/// Upper bound on the number of damped outer iterations given any lower
/// bound on the optimal value:
///   ceil((f0 - fstar_lower) / (delta omega(((1 - 2 C1)/C1) h^{-1}(beta)))).
/// A -infinity lower bound disables the cap.
template <typename Scalar>
long k_max_damped(Scalar f0, Scalar fstar_lower, const SolverParams<Scalar>& p) {
  if (!(p.c_one > Scalar(0)) || !(p.c_one < Scalar(0.5)))
    throw std::domain_error("k_max_damped: C1 must lie in (0, 0.5)");
  if (fstar_lower == -std::numeric_limits<Scalar>::infinity())
    return std::numeric_limits<long>::max();
  if (f0 <= fstar_lower) return 0;
  const Scalar step = (Scalar(1) - Scalar(2) * p.c_one) / p.c_one * sc::h_inv(p.beta);
  const Scalar denom = p.delta * sc::omega(step);
  return static_cast<long>(std::ceil(double((f0 - fstar_lower) / denom)));
}

struct NfwOptions {
  bool use_away = true;        // away-step inner solver with warm-started active set
  long inner_max_iters = -1;   // per inner solve; <= 0 derives from the gap bound
  int inner_refresh_period = 512;
  bool record_iterates = false;
  bool check_active_invariants = true;
};

namespace detail {

template <typename Scalar>
struct ActiveDiagnostics {
  void observe(const ActiveSet<Scalar>& as, const VectorX<Scalar>& x,
               SolverReport<Scalar>* rep) {
    const Scalar sum_err = std::abs(as.weight_sum() - Scalar(1));
    rep->max_weight_sum_err = std::max(rep->max_weight_sum_err, sum_err);
    rep->min_weight_seen = std::min(rep->min_weight_seen, as.min_weight());
    const Scalar comb_err =
        (as.combination(x.size()) - x).template lpNorm<Eigen::Infinity>();
    rep->max_combination_err = std::max(rep->max_combination_err, comb_err);
  }
};

}  // namespace detail

/// The double-loop solver: an outer inexact projected Newton scheme whose
/// search direction is an eta_k-accurate Frank-Wolfe solve of the quadratic
/// model.  Far from the optimum it takes guaranteed-descent damped steps;
/// once gamma_k + eta_k <= h^{-1}(beta) certifies the local region it
/// switches to full steps, contracting the certificate lambda_k and the
/// subproblem accuracy eta_k by sigma at every iteration, and stops when
/// lambda_k <= eps.
///
/// lambda_k is a certificate sequence, not a measurement: it bounds
/// ||x^k - x*||_{x*} under the validated parameter conditions.
template <typename Scalar>
SolverReport<Scalar> nfw_solve(const ObjectiveOracle<Scalar>& f,
                               const FeasibleSet<Scalar>& set,
                               const SolverParams<Scalar>& params,
                               const VectorX<Scalar>& x0,
                               const SolveBudget& budget = {},
                               const NfwOptions& opts = {}) {
  const ParamsDiagnostic diag = validate_params(params);
  if (!diag.ok)
    throw std::invalid_argument("nfw_solve: invalid parameters\n" + diag.report);
  if (!set.contains(x0, Scalar(1e-9)))
    throw std::invalid_argument("nfw_solve: x0 is not feasible");
  if (!f.domain_check(x0))
    throw std::invalid_argument("nfw_solve: x0 is outside the objective domain");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  SolverReport<Scalar> rep;
  rep.solver = "NFW";

  const Scalar h_inv_beta = sc::h_inv(params.beta);
  Scalar lambda = params.beta / params.sigma;
  Scalar eta = std::min(params.beta / params.c_big, params.c_one * h_inv_beta);

  VectorX<Scalar> x = x0;
  ActiveSet<Scalar> active;
  if (opts.use_away) active = set.decompose(x0);
  detail::ActiveDiagnostics<Scalar> active_diag;
  if (opts.use_away && opts.check_active_invariants)
    active_diag.observe(active, x, &rep);

  InnerOptions inner_opts;
  inner_opts.max_iters = opts.inner_max_iters;
  inner_opts.refresh_period = opts.inner_refresh_period;

  rep.reason = TerminationReason::kOuterBudget;
  long k = 0;
  for (; k < budget.max_outer; ++k) {
    if (rep.lmo_calls >= budget.max_lmo) {
      rep.reason = TerminationReason::kLmoBudget;
      break;
    }
    if (elapsed() >= budget.max_seconds) {
      rep.reason = TerminationReason::kTimeBudget;
      break;
    }
    if (opts.record_iterates) rep.iterates.push_back(x);

    const Scalar f_x = f.eval(x);
    VectorX<Scalar> grad = f.grad(x);
    ++rep.grad_evals;

    QuadraticModel<Scalar> model{std::move(grad), &f, x, eta * eta};

    InnerResult<Scalar> inner;
    Scalar gamma = Scalar(0);
    long lmo_this_iter = 0;
    bool degenerate_give_up = false;
    for (int retry = 0;; ++retry) {
      inner = opts.use_away ? fw_away_quadratic(model, set, active, inner_opts)
                            : fw_quadratic(model, set, inner_opts);
      lmo_this_iter += inner.lmo_calls;
      rep.lmo_calls += inner.lmo_calls;
      rep.hess_ops += inner.hess_ops;
      if (inner.status == InnerStatus::kFloorReached) ++rep.inner_floor_events;
      if (inner.status == InnerStatus::kIterLimit) ++rep.inner_iter_limit_events;

      gamma = std::sqrt(std::max(Scalar(0), inner.Hd.dot(inner.u - x)));

      const bool full_test = (gamma + eta <= h_inv_beta) || (lambda <= params.beta);
      if (full_test || gamma > eta) break;
      // Damped branch with gamma <= eta: the model gap is below the solve
      // tolerance, so tighten the subproblem and try again.
      if (retry >= 60) {
        degenerate_give_up = true;
        break;
      }
      eta /= Scalar(2);
      model.tol = eta * eta;
    }
    if (degenerate_give_up) {
      rep.reason = TerminationReason::kDegenerateTolerance;
      break;
    }

    const VectorX<Scalar> d = inner.u - x;
    const bool full_test = (gamma + eta <= h_inv_beta) || (lambda <= params.beta);

    TraceRow<Scalar> row;
    row.iter = k;
    row.fval = f_x;
    row.gamma = gamma;
    row.eta = eta;
    row.lmo_inner = lmo_this_iter;

    bool take_full = full_test;
    VectorX<Scalar> x_next;
    ActiveSet<Scalar> active_next;
    if (take_full) {
      x_next = inner.u;
      if (opts.use_away) active_next = inner.active;
      if (!f.domain_check(x_next)) {
        // Only reachable when beta is set far above what the theory allows;
        // fall back to one damped step and record the event.
        ++rep.domain_retreats;
        take_full = false;
      }
    }
    if (take_full) {
      lambda *= params.sigma;
      eta *= params.sigma;
      row.stage = StepKind::kFull;
      row.alpha = Scalar(1);
    } else {
      if (!(gamma > eta)) {
        rep.reason = TerminationReason::kDegenerateTolerance;
        break;
      }
      const Scalar alpha = damped_step_size(gamma, eta, params.delta);
      if (opts.use_away) {
        active_next = active;
        active_next.scale(Scalar(1) - alpha);
        active_next.merge_scaled(inner.active, alpha);
        active_next.prune_and_renormalize();
        x_next = active_next.combination(x.size());
      } else {
        x_next = x + alpha * d;
      }
      if (!f.domain_check(x_next))
        throw std::runtime_error("nfw_solve: damped step left the objective domain");
      row.stage = StepKind::kDamped;
      row.alpha = alpha;
#ifndef NDEBUG
      assert(damped_descent_check(f_x, f.eval(x_next), gamma, eta, params.delta));
#endif
    }

    row.lambda = lambda;
    row.gap_proxy = lambda;
    row.lmo_cum = rep.lmo_calls;
    row.grad_cum = rep.grad_evals;
    row.hess_cum = rep.hess_ops;
    row.time_s = elapsed();
    rep.trace.push_back(row);

    x = std::move(x_next);
    if (opts.use_away) {
      active = std::move(active_next);
      if (opts.check_active_invariants) active_diag.observe(active, x, &rep);
    }

    if (lambda <= params.eps) {
      rep.reason = TerminationReason::kConverged;
      ++k;
      break;
    }
  }

  rep.x_final = x;
  rep.f_final = f.eval(x);
  if (opts.record_iterates) rep.iterates.push_back(x);

  TraceRow<Scalar> last;
  last.iter = k;
  last.fval = rep.f_final;
  last.lambda = lambda;
  last.gap_proxy = lambda;
  last.lmo_cum = rep.lmo_calls;
  last.grad_cum = rep.grad_evals;
  last.hess_cum = rep.hess_ops;
  last.time_s = elapsed();
  rep.trace.push_back(last);
  rep.wall_seconds = elapsed();
  return rep;
}

}  // namespace nfw

#endif  // NFW_NFW_SOLVER_HPP
