#ifndef NFW_PROJECTIONS_HPP
#define NFW_PROJECTIONS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nfw/types.hpp"

namespace nfw {

/// Euclidean projection onto the unit simplex { x >= 0, sum x = 1 } by the
/// sorted-threshold rule, O(p log p).
template <typename Scalar>
VectorX<Scalar> project_simplex(const VectorX<Scalar>& y) {
  const Index p = y.size();
  std::vector<Scalar> u(y.data(), y.data() + p);
  std::sort(u.begin(), u.end(), std::greater<Scalar>());

  Scalar cumsum = Scalar(0);
  Scalar theta = Scalar(0);
  Index rho = 0;
  for (Index j = 0; j < p; ++j) {
    cumsum += u[j];
    const Scalar t = (cumsum - Scalar(1)) / Scalar(j + 1);
    if (u[j] - t > Scalar(0)) {
      rho = j + 1;
      theta = t;
    }
  }
  (void)rho;
  return (y.array() - theta).cwiseMax(Scalar(0)).matrix();
}

/// Euclidean projection onto { ||x||_1 <= rho }.  Points already inside are
/// returned unchanged; otherwise soft-threshold with the parameter from the
/// simplex-projection reduction applied to |y|/rho.
template <typename Scalar>
VectorX<Scalar> project_l1ball(const VectorX<Scalar>& y, Scalar rho) {
  if (y.template lpNorm<1>() <= rho) return y;
  VectorX<Scalar> a = y.cwiseAbs() / rho;
  VectorX<Scalar> w = project_simplex<Scalar>(a);
  // Recover the threshold actually applied: theta = max_i (a_i - w_i) over
  // the support, then soft-threshold |y| by rho * theta.
  Scalar theta = Scalar(0);
  for (Index i = 0; i < y.size(); ++i) theta = std::max(theta, a[i] - w[i]);
  VectorX<Scalar> out(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    const Scalar mag = std::max(std::abs(y[i]) - rho * theta, Scalar(0));
    out[i] = y[i] < Scalar(0) ? -mag : mag;
  }
  return out;
}

}  // namespace nfw

#endif  // NFW_PROJECTIONS_HPP
