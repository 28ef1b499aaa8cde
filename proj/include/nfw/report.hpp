#ifndef NFW_REPORT_HPP
#define NFW_REPORT_HPP

#include <limits>
#include <string>
#include <vector>

#include "nfw/types.hpp"

namespace nfw {

enum class StepKind { kDamped, kFull, kNone };

enum class TerminationReason {
  kConverged,            // certificate (or method-specific criterion) reached
  kOuterBudget,          // outer iteration cap hit
  kLmoBudget,            // cumulative LMO cap hit
  kTimeBudget,           // wall-clock cap hit
  kDegenerateTolerance,  // damped direction stayed degenerate after retries
};

inline const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::kConverged: return "converged";
    case TerminationReason::kOuterBudget: return "outer-budget";
    case TerminationReason::kLmoBudget: return "lmo-budget";
    case TerminationReason::kTimeBudget: return "time-budget";
    case TerminationReason::kDegenerateTolerance: return "degenerate-tolerance";
  }
  return "unknown";
}

inline const char* to_string(StepKind s) {
  switch (s) {
    case StepKind::kDamped: return "damped";
    case StepKind::kFull: return "full";
    case StepKind::kNone: return "-";
  }
  return "-";
}

/// One line of a solver trace.  Fields that do not apply to a method are
/// NaN (they serialize as empty CSV cells).
template <typename Scalar>
struct TraceRow {
  long iter = 0;
  double time_s = 0;
  Scalar fval = Scalar(0);
  Scalar gap_proxy = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar gamma = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar eta = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar lambda = std::numeric_limits<Scalar>::quiet_NaN();
  StepKind stage = StepKind::kNone;
  Scalar alpha = std::numeric_limits<Scalar>::quiet_NaN();
  long lmo_inner = 0;
  long lmo_cum = 0;
  long grad_cum = 0;
  long hess_cum = 0;
};

/// Full per-run record: the trace, the final iterate, exact oracle-call
/// counters and a handful of numerical-health diagnostics.
template <typename Scalar>
struct SolverReport {
  std::string solver;
  std::vector<TraceRow<Scalar>> trace;
  VectorX<Scalar> x_final;
  Scalar f_final = Scalar(0);
  TerminationReason reason = TerminationReason::kConverged;

  long lmo_calls = 0;
  long grad_evals = 0;
  long hess_ops = 0;
  long proj_calls = 0;
  double wall_seconds = 0;

  // Filled when requested through the solver options.
  std::vector<VectorX<Scalar>> iterates;

  // Away-step bookkeeping diagnostics (worst case over the run).
  Scalar max_weight_sum_err = Scalar(0);
  Scalar min_weight_seen = Scalar(0);
  Scalar max_combination_err = Scalar(0);

  // Numerical events (see README): inner solves that stopped at the
  // floating-point gap floor or at the iteration cap, and full steps
  // retried as damped steps after a domain exit.
  long inner_floor_events = 0;
  long inner_iter_limit_events = 0;
  long domain_retreats = 0;
};

/// Caps for a single solver run; any cap hit flags the report and returns
/// the partial trace.
struct SolveBudget {
  long max_outer = 100000;
  long max_lmo = std::numeric_limits<long>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
};

}  // namespace nfw

#endif  // NFW_REPORT_HPP
