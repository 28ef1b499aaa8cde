#ifndef NFW_SC_CORE_HPP
#define NFW_SC_CORE_HPP

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nfw {

/// Scalar utilities for self-concordant minimization: the auxiliary
/// functions omega / omega_star, the stage-switch function h together
/// with its inverse, and validation of the outer-solver parameters.
namespace sc {

/// omega(tau) = tau - ln(1 + tau), defined for tau >= 0.
template <typename Scalar>
Scalar omega(Scalar tau) {
  if (!(tau >= Scalar(0)))
    throw std::domain_error("sc::omega: tau must be nonnegative");
  // log1p keeps accuracy for small tau where tau - ln(1+tau) ~ tau^2/2.
  return tau - std::log1p(tau);
}

/// omega_star(tau) = -tau - ln(1 - tau), defined for tau in [0, 1).
template <typename Scalar>
Scalar omega_star(Scalar tau) {
  if (!(tau >= Scalar(0)) || tau >= Scalar(1))
    throw std::domain_error("sc::omega_star: tau must lie in [0, 1)");
  return -tau - std::log1p(-tau);
}

namespace detail {

// Denominator of h; its smallest positive root is the right end of
// the h domain.
template <typename Scalar>
Scalar h_denominator(Scalar tau) {
  const Scalar one_m = Scalar(1) - tau;
  return (Scalar(1) - Scalar(2) * tau) * one_m * one_m - tau * tau;
}

}  // namespace detail

/// Right endpoint of the domain of h: the root of
/// (1 - 2 tau)(1 - tau)^2 - tau^2 in (0.3, 0.4), found once by bisection.
template <typename Scalar = double>
Scalar h_domain_end() {
  static const Scalar root = [] {
    Scalar lo = Scalar(0.3), hi = Scalar(0.4);
    // denominator is positive at 0.3 and negative at 0.4
    for (int i = 0; i < 200; ++i) {
      const Scalar mid = (lo + hi) / Scalar(2);
      if (detail::h_denominator(mid) > Scalar(0))
        lo = mid;
      else
        hi = mid;
      if (hi - lo < Scalar(1e-15)) break;
    }
    return (lo + hi) / Scalar(2);
  }();
  return root;
}

/// h(tau) = tau (1 - 2 tau + 2 tau^2) / ((1 - 2 tau)(1 - tau)^2 - tau^2),
/// monotone increasing on [0, h_domain_end()).
template <typename Scalar>
Scalar h(Scalar tau) {
  if (!(tau >= Scalar(0)) || tau >= h_domain_end<Scalar>())
    throw std::domain_error("sc::h: tau outside [0, C2)");
  const Scalar num = tau * (Scalar(1) - Scalar(2) * tau + Scalar(2) * tau * tau);
  return num / detail::h_denominator(tau);
}

/// Inverse of h on [0, C2): the unique tau with h(tau) = y, by bisection
/// to absolute tolerance 1e-12.  Values of y above h's numeric range clamp
/// to the right end of the bracket.
template <typename Scalar>
Scalar h_inv(Scalar y) {
  if (!(y >= Scalar(0)))
    throw std::domain_error("sc::h_inv: y must be nonnegative");
  if (y == Scalar(0)) return Scalar(0);
  Scalar lo = Scalar(0);
  Scalar hi = h_domain_end<Scalar>() - Scalar(1e-9);
  if (h(hi) <= y) return hi;
  while (hi - lo > Scalar(1e-12)) {
    const Scalar mid = (lo + hi) / Scalar(2);
    if (h(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / Scalar(2);
}

/// LMO-complexity exponent nu = 1 + ln(1 - 2 beta) / ln(sigma).
template <typename Scalar>
Scalar nu_exponent(Scalar beta, Scalar sigma) {
  if (!(beta > Scalar(0)) || beta >= Scalar(0.5))
    throw std::domain_error("sc::nu_exponent: beta must lie in (0, 0.5)");
  if (!(sigma > Scalar(0)) || sigma >= Scalar(1))
    throw std::domain_error("sc::nu_exponent: sigma must lie in (0, 1)");
  return Scalar(1) + std::log1p(-Scalar(2) * beta) / std::log(sigma);
}

}  // namespace sc

/// Outer-solver parameters.  beta anchors the full-step region, sigma is
/// the per-full-step contraction factor, c_big the accuracy ratio C,
/// c_one the damped-stage accuracy fraction C1, delta the damped-step
/// scaling, eps the target accuracy in the ||.||_{x*} sense.
template <typename Scalar = double>
struct SolverParams {
  Scalar beta = Scalar(0.05);
  Scalar sigma = Scalar(0.17);
  Scalar c_big = Scalar(10);
  Scalar c_one = Scalar(0.25);
  Scalar delta = Scalar(0.95);
  Scalar eps = Scalar(1e-6);
};

/// Result of validate_params: overall verdict plus a per-condition report.
struct ParamsDiagnostic {
  bool ok = true;         // all conditions hold within relative slack 1e-3
  bool strict_ok = true;  // all conditions hold with no slack
  std::string report;     // one line per condition with its LHS value
};

/// Checks the range constraints and the two coupling inequalities
///   1/(C(1-beta)) + beta/((1-2 beta)(1-beta)^2) <= sigma
///   1/C + 1/(1-2 beta)                          <= 2
/// A relative slack of 1e-3 absorbs rounded parameter pairs quoted to a
/// few digits; strict_ok reports the unslackened verdict.
template <typename Scalar>
ParamsDiagnostic validate_params(const SolverParams<Scalar>& p) {
  constexpr double kSlack = 1e-3;
  ParamsDiagnostic d;
  std::ostringstream os;

  auto range = [&](bool cond, const std::string& what, double value) {
    os << (cond ? "  ok      " : "  VIOLATED") << "  " << what
       << "  (value = " << value << ")\n";
    if (!cond) {
      d.ok = false;
      d.strict_ok = false;
    }
  };
  range(p.beta > Scalar(0) && p.beta < Scalar(0.5), "beta in (0, 0.5)",
        double(p.beta));
  range(p.sigma > Scalar(0) && p.sigma < Scalar(1), "sigma in (0, 1)",
        double(p.sigma));
  range(p.c_big > Scalar(1), "C > 1", double(p.c_big));
  range(p.c_one > Scalar(0) && p.c_one < Scalar(0.5), "C1 in (0, 0.5)",
        double(p.c_one));
  range(p.delta > Scalar(0) && p.delta < Scalar(1), "delta in (0, 1)",
        double(p.delta));
  range(p.eps > Scalar(0), "eps > 0", double(p.eps));

  if (d.ok) {
    auto coupling = [&](double lhs, double rhs, const std::string& what) {
      const bool strict = lhs <= rhs;
      const bool slack = lhs <= rhs * (1.0 + kSlack);
      os << (slack ? "  ok      " : "  VIOLATED") << "  " << what
         << "  (lhs = " << lhs << ", rhs = " << rhs
         << (strict ? "" : slack ? ", within slack" : "") << ")\n";
      if (!slack) d.ok = false;
      if (!strict) d.strict_ok = false;
    };
    const double b = double(p.beta), s = double(p.sigma), c = double(p.c_big);
    coupling(1.0 / (c * (1.0 - b)) + b / ((1.0 - 2.0 * b) * (1.0 - b) * (1.0 - b)),
             s, "1/(C(1-beta)) + beta/((1-2beta)(1-beta)^2) <= sigma");
    coupling(1.0 / c + 1.0 / (1.0 - 2.0 * b), 2.0,
             "1/C + 1/(1-2beta) <= 2");
  }

  d.report = os.str();
  return d;
}

}  // namespace nfw

#endif  // NFW_SC_CORE_HPP
