// Quad-precision objective evaluation for acceptance checks whose bounds sit
// below double rounding noise.  Inputs are the solver's double iterates; only
// the function value is computed in __float128.
#ifndef NFW_TESTS_SUPPORT_HIGHPREC_HPP
#define NFW_TESTS_SUPPORT_HIGHPREC_HPP

#include <Eigen/Core>
#include <quadmath.h>

namespace nfw::testing {

/// -sum_i ln(a_i' x) evaluated in __float128.
inline __float128 portfolio_eval_q(const Eigen::MatrixXd& a, const Eigen::VectorXd& x) {
  __float128 f = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    __float128 r = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r += static_cast<__float128>(a(i, j)) * static_cast<__float128>(x[j]);
    f -= logq(r);
  }
  return f;
}

inline double q_to_double(__float128 v) { return static_cast<double>(v); }

}  // namespace nfw::testing

#endif  // NFW_TESTS_SUPPORT_HIGHPREC_HPP
