// Test-only reference oracles: brute-force and high-precision routes kept
// independent of the library implementations they check.
#ifndef NFW_TESTS_SUPPORT_TEST_ORACLES_HPP
#define NFW_TESTS_SUPPORT_TEST_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "nfw/oracle.hpp"
#include "nfw/types.hpp"

namespace nfw::testing {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Central finite difference of the gradient: (grad(x + h v) - grad(x - h v)) / 2h.
inline VectorXd fd_hvp(const ObjectiveOracle<double>& f, const VectorXd& x,
                       const VectorXd& v, double h = 1e-5) {
  const VectorXd vn = v.norm() > 0 ? (v / v.norm()).eval() : v;
  const VectorXd gp = f.grad(x + h * vn);
  const VectorXd gm = f.grad(x - h * vn);
  return ((gp - gm) / (2 * h)) * v.norm();
}

/// Dense Hessian assembled column-by-column through hvp.
inline MatrixXd dense_hessian(const ObjectiveOracle<double>& f, const VectorXd& x) {
  const Eigen::Index p = f.dim();
  MatrixXd H(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    VectorXd e = VectorXd::Zero(p);
    e[j] = 1.0;
    H.col(j) = f.hvp(x, e);
  }
  return H;
}

/// Exact simplex projection by KKT support enumeration (p <= ~20): for every
/// candidate support S, x_i = y_i + (1 - sum_S y)/|S| on S and 0 elsewhere;
/// the projection is the feasible candidate closest to y.
inline VectorXd qp_project_simplex(const VectorXd& y) {
  const int p = static_cast<int>(y.size());
  VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    double sum = 0;
    int count = 0;
    for (int i = 0; i < p; ++i)
      if (mask & (1u << i)) {
        sum += y[i];
        ++count;
      }
    const double shift = (1.0 - sum) / count;
    VectorXd x = VectorXd::Zero(p);
    bool feasible = true;
    for (int i = 0; i < p; ++i) {
      if (mask & (1u << i)) {
        x[i] = y[i] + shift;
        if (x[i] < -1e-14) feasible = false;
      }
    }
    if (!feasible) continue;
    const double dist = (x - y).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

/// Exact ell1-ball projection oracle: interior shortcut, else the boundary
/// stationary points enumerated over sign/support patterns (3^p candidates).
inline VectorXd qp_project_l1(const VectorXd& y, double rho) {
  const int p = static_cast<int>(y.size());
  if (y.lpNorm<1>() <= rho) return y;
  VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<int> pattern(p, 0);  // ternary counter over {0, +1, -1}
  const long total = static_cast<long>(std::pow(3.0, p));
  for (long code = 1; code < total; ++code) {
    long c = code;
    double signed_sum = 0;
    int count = 0;
    for (int i = 0; i < p; ++i) {
      const int digit = static_cast<int>(c % 3);
      c /= 3;
      pattern[i] = digit == 2 ? -1 : digit;
      if (pattern[i] != 0) {
        signed_sum += pattern[i] * y[i];
        ++count;
      }
    }
    const double nu = (signed_sum - rho) / count;
    if (nu < 0) continue;  // would land strictly inside; handled by shortcut
    VectorXd x = VectorXd::Zero(p);
    bool feasible = true;
    for (int i = 0; i < p; ++i) {
      if (pattern[i] != 0) {
        x[i] = y[i] - nu * pattern[i];
        if (pattern[i] * x[i] < -1e-14) feasible = false;
      }
    }
    if (!feasible) continue;
    if (std::abs(x.lpNorm<1>() - rho) > 1e-9) continue;
    const double dist = (x - y).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

/// Strictly convex quadratic f(x) = 1/2 (x - c)' Q (x - c); Newton's model
/// of it is exact, which pins down solver behavior in closed form.
class QuadraticObjective final : public ObjectiveOracle<double> {
 public:
  QuadraticObjective(MatrixXd q, VectorXd center)
      : Q_(std::move(q)), c_(std::move(center)) {}

  Index dim() const override { return c_.size(); }
  double eval(const VectorXd& x) const override {
    return 0.5 * (x - c_).dot(Q_ * (x - c_));
  }
  VectorXd grad(const VectorXd& x) const override { return Q_ * (x - c_); }
  VectorXd hvp(const VectorXd&, const VectorXd& v) const override { return Q_ * v; }
  bool domain_check(const VectorXd& x) const override { return x.allFinite(); }

 private:
  MatrixXd Q_;
  VectorXd c_;
};

/// Golden-section reference for 1-D minimization over [0, hi].
template <typename Fn>
double golden_min(Fn&& phi, double hi, double tol = 1e-12) {
  const double invphi = 0.6180339887498949;
  double a = 0, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = phi(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = phi(x2);
    }
  }
  return 0.5 * (a + b);
}

/// Random interior simplex point with coordinates bounded away from zero.
inline VectorXd random_interior_simplex(Eigen::Index p, std::mt19937_64& rng,
                                        double margin = 0.1) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  VectorXd x(p);
  for (Eigen::Index i = 0; i < p; ++i) x[i] = margin + unif(rng);
  return x / x.sum();
}

/// Random point with ||x||_1 strictly inside the rho ball.
inline VectorXd random_interior_l1(Eigen::Index p, double rho, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  VectorXd x(p);
  for (Eigen::Index i = 0; i < p; ++i) x[i] = unif(rng);
  const double target = 0.8 * rho * std::uniform_real_distribution<double>(0.1, 1.0)(rng);
  return x * (target / x.lpNorm<1>());
}

}  // namespace nfw::testing

#endif  // NFW_TESTS_SUPPORT_TEST_ORACLES_HPP
