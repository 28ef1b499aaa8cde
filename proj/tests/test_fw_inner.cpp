#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "nfw/fw_inner.hpp"
#include "nfw/objectives/portfolio.hpp"
#include "support/test_oracles.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nfw::ActiveSet;
using nfw::InnerOptions;
using nfw::InnerStatus;
using nfw::QuadraticModel;
using nfw::Simplex;
using nfw::testing::QuadraticObjective;

namespace {

QuadraticModel<double> make_model(const QuadraticObjective& obj, VectorXd grad,
                                  VectorXd anchor, double tol) {
  return QuadraticModel<double>{std::move(grad), &obj, std::move(anchor), tol};
}

MatrixXd random_psd(int p, std::mt19937_64& rng, double ridge = 0.0) {
  std::normal_distribution<double> normal;
  MatrixXd g(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) g(i, j) = normal(rng);
  MatrixXd h = g.transpose() * g / p;
  h.diagonal().array() += ridge;
  return h;
}

}  // namespace

TEST_CASE("hand-computed first step on the 2-simplex with identity Hessian") {
  QuadraticObjective identity(MatrixXd::Identity(2, 2), VectorXd::Zero(2));
  VectorXd h(2), u0(2);
  h << 0.5, -0.5;
  u0 << 1, 0;
  Simplex<double> set(2);

  InnerOptions opts;
  opts.max_iters = 1;
  opts.record_gaps = true;
  const auto res = nfw::fw_quadratic(make_model(identity, h, u0, 0.0), set, opts);

  REQUIRE(res.gap_history.size() >= 1);
  CHECK(res.gap_history[0] == doctest::Approx(1.0).epsilon(1e-14));  // V_0
  // v0 = e_2, delta_0 = 2, tau_0 = 1/2, u1 = (0.5, 0.5)
  CHECK(res.u[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(res.u[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("anchor already an eta-solution returns immediately with one LMO") {
  QuadraticObjective identity(MatrixXd::Identity(3, 3), VectorXd::Zero(3));
  VectorXd h = VectorXd::Constant(3, 1.0);  // constant gradient: gap 0 at any point
  const VectorXd u0 = VectorXd::Constant(3, 1.0 / 3);
  Simplex<double> set(3);

  const auto res = nfw::fw_quadratic(make_model(identity, h, u0, 1e-4), set);
  CHECK(res.status == InnerStatus::kConverged);
  CHECK(res.lmo_calls == 1);
  CHECK(res.iters == 0);
  CHECK((res.u - u0).norm() == 0.0);

  // warm-started away variant behaves the same
  const auto warm = set.decompose(u0);
  const auto res2 =
      nfw::fw_away_quadratic(make_model(identity, h, u0, 1e-4), set, warm);
  CHECK(res2.status == InnerStatus::kConverged);
  CHECK(res2.lmo_calls == 1);
  CHECK((res2.u - u0).norm() == 0.0);
}

TEST_CASE("plain FW gap obeys the 6 lambda_max D^2 / (T+1) decay bound") {
  std::mt19937_64 rng(101);
  const int p = 30;
  Simplex<double> set(p);
  const double d2 = 2.0;

  for (int inst = 0; inst < 10; ++inst) {
    const MatrixXd h_mat = random_psd(p, rng);
    QuadraticObjective obj(h_mat, VectorXd::Zero(p));
    std::normal_distribution<double> normal;
    VectorXd h(p);
    for (int i = 0; i < p; ++i) h[i] = normal(rng);
    const VectorXd u0 = VectorXd::Constant(p, 1.0 / p);

    InnerOptions opts;
    opts.max_iters = 1000;
    opts.record_gaps = true;
    const auto res = nfw::fw_quadratic(make_model(obj, h, u0, 0.0), set, opts);

    const double lam = Eigen::SelfAdjointEigenSolver<MatrixXd>(h_mat)
                           .eigenvalues()
                           .maxCoeff();
    for (long T : {10L, 100L, 1000L}) {
      double min_gap = std::numeric_limits<double>::infinity();
      const long upto = std::min<long>(T, static_cast<long>(res.gap_history.size()) - 1);
      for (long t = 1; t <= upto; ++t)
        min_gap = std::min(min_gap, res.gap_history[static_cast<std::size_t>(t)]);
      if (upto < T) min_gap = std::min(min_gap, res.gap);  // stopped early
      CHECK(min_gap <= 6.0 * lam * d2 / double(T + 1));
    }
  }
}

TEST_CASE("away step with a single-vertex active set matches the plain first step") {
  std::mt19937_64 rng(113);
  const int p = 6;
  const MatrixXd h_mat = random_psd(p, rng, 0.5);
  QuadraticObjective obj(h_mat, VectorXd::Zero(p));
  std::normal_distribution<double> normal;
  VectorXd h(p);
  for (int i = 0; i < p; ++i) h[i] = normal(rng);
  Simplex<double> set(p);

  // Start both from the vertex the away variant would pick: lmo(h).
  const auto v0 = set.lmo(h);
  const VectorXd u0 = v0.to_dense();

  InnerOptions opts;
  opts.max_iters = 1;
  const auto plain = nfw::fw_quadratic(make_model(obj, h, u0, 0.0), set, opts);
  const auto away =
      nfw::fw_away_quadratic(make_model(obj, h, u0, 0.0), set, ActiveSet<double>{}, opts);
  CHECK((plain.u - away.u).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("away-step bookkeeping stays consistent and feasible at every prefix") {
  std::mt19937_64 rng(127);
  const int p = 10;
  const MatrixXd h_mat = random_psd(p, rng, 0.3);
  // center outside the simplex puts the constrained optimum on a face
  VectorXd c = VectorXd::Constant(p, -0.2);
  c[3] = 1.5;
  QuadraticObjective obj(h_mat, c);
  const VectorXd u0 = VectorXd::Constant(p, 1.0 / p);
  const VectorXd h = h_mat * (u0 - c);
  Simplex<double> set(p);
  const auto warm = set.decompose(u0);

  for (long t : {1L, 3L, 7L, 20L, 60L, 150L}) {
    InnerOptions opts;
    opts.max_iters = t;
    const auto res = nfw::fw_away_quadratic(make_model(obj, h, u0, 0.0), set, warm, opts);
    CHECK(std::abs(res.active.weight_sum() - 1.0) <= 1e-12);
    CHECK(res.active.min_weight() >= -1e-14);
    CHECK((res.active.combination(p) - res.u).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(set.contains(res.u, 1e-10));
  }
}

TEST_CASE("model objective is nonincreasing along both solvers") {
  std::mt19937_64 rng(131);
  const int p = 8;
  const MatrixXd h_mat = random_psd(p, rng, 0.2);
  QuadraticObjective obj(h_mat, VectorXd::Zero(p));
  std::normal_distribution<double> normal;
  VectorXd h(p);
  for (int i = 0; i < p; ++i) h[i] = normal(rng);
  const VectorXd u0 = VectorXd::Constant(p, 1.0 / p);
  Simplex<double> set(p);
  const auto model = make_model(obj, h, u0, 0.0);
  const auto warm = set.decompose(u0);

  double prev_plain = model.value(u0);
  double prev_away = prev_plain;
  for (long t = 1; t <= 40; ++t) {
    InnerOptions opts;
    opts.max_iters = t;
    const double psi_plain = model.value(nfw::fw_quadratic(model, set, opts).u);
    const double psi_away =
        model.value(nfw::fw_away_quadratic(model, set, warm, opts).u);
    CHECK(psi_plain <= prev_plain + 1e-12);
    CHECK(psi_away <= prev_away + 1e-12);
    prev_plain = psi_plain;
    prev_away = psi_away;
  }
}

TEST_CASE("away steps converge linearly where plain FW stalls") {
  std::mt19937_64 rng(139);
  const int p = 30;
  const MatrixXd h_mat = random_psd(p, rng, 0.05);  // strongly convex
  std::normal_distribution<double> normal;
  VectorXd c(p);  // center off the simplex: the optimum sits on a face
  for (int i = 0; i < p; ++i) c[i] = 0.3 * normal(rng);
  QuadraticObjective obj(h_mat, c);
  const VectorXd u0 = VectorXd::Constant(p, 1.0 / p);
  const VectorXd h = h_mat * (u0 - c);
  Simplex<double> set(p);
  const auto model = make_model(obj, h, u0, 0.0);

  InnerOptions opts;
  opts.max_iters = 400;
  opts.record_gaps = true;
  const auto away = nfw::fw_away_quadratic(model, set, set.decompose(u0), opts);
  const auto plain = nfw::fw_quadratic(model, set, opts);

  // linear convergence: the away run certifies a tiny gap well before the cap
  CHECK(away.gap <= 1e-10);

  double plain_min = std::numeric_limits<double>::infinity();
  for (double g : plain.gap_history) plain_min = std::min(plain_min, g);
  plain_min = std::min(plain_min, plain.gap);
  CHECK(plain_min > 1e3 * std::max(away.gap, 1e-16));

  // least-squares slope of log V_t over the last 50 recorded away gaps
  const auto& gh = away.gap_history;
  REQUIRE(gh.size() >= 60);
  const std::size_t n0 = gh.size() - 50;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = n0; i < gh.size(); ++i) {
    if (gh[i] <= 0) continue;
    const double x = double(i - n0);
    const double y = std::log(gh[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  REQUIRE(cnt >= 10);
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  CHECK(slope < 0.0);
}

TEST_CASE("eta-solution certificate against a tight oracle run") {
  std::mt19937_64 rng(149);
  std::normal_distribution<double> normal;
  MatrixXd a(20, 6);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = 1.0 + 0.1 * normal(rng);
  nfw::PortfolioObjective<double> f(a);
  Simplex<double> set(6);
  const VectorXd x = nfw::testing::random_interior_simplex(6, rng);

  QuadraticModel<double> model{f.grad(x), &f, x, 1e-12};
  InnerOptions opts;
  opts.max_iters = 200000;
  const auto oracle = nfw::fw_away_quadratic(model, set, set.decompose(x), opts);
  REQUIRE(oracle.status == InnerStatus::kConverged);
  const VectorXd tx = oracle.u;  // T(x) to gap 1e-12

  CHECK(nfw::certify_eta_solution(model, set, tx) <= 1.1e-12);

  for (double eta : {1e-2, 1e-3}) {
    QuadraticModel<double> m2{f.grad(x), &f, x, eta * eta};
    const auto res = nfw::fw_away_quadratic(m2, set, set.decompose(x), opts);
    REQUIRE(res.status == InnerStatus::kConverged);
    // re-certification agrees with the result's own gap
    const double gap = nfw::certify_eta_solution(m2, set, res.u);
    CHECK(gap >= -1e-14);
    CHECK(gap <= eta * eta * (1 + 1e-9));
    CHECK(std::abs(gap - res.gap) <= 1e-12 + 1e-6 * std::abs(gap));
    // distance form of the certificate
    const auto ln = nfw::local_norm<double>(f, x, res.u - tx);
    CHECK(ln.norm <= eta * (1 + 1e-6));
  }
}

TEST_CASE("flat directions take the endpoint step") {
  // rank-deficient PSD model: H = e1 e1', flat along e2 - e3
  MatrixXd h_mat = MatrixXd::Zero(3, 3);
  h_mat(0, 0) = 1.0;
  QuadraticObjective obj(h_mat, VectorXd::Zero(3));
  VectorXd h(3);
  h << 0.9, 0.4, -0.2;  // pushes toward e3 along a flat direction
  VectorXd u0(3);
  u0 << 0, 1, 0;
  Simplex<double> set(3);
  InnerOptions opts;
  opts.max_iters = 5;
  const auto res = nfw::fw_quadratic(make_model(obj, h, u0, 1e-12), set, opts);
  // tau = 1 jumps straight to e3 and the model is optimal there
  CHECK(res.u[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res.status == InnerStatus::kConverged);
}

TEST_CASE("iteration cap returns the budget-exhausted status with the iterate") {
  std::mt19937_64 rng(151);
  const int p = 20;
  const MatrixXd h_mat = random_psd(p, rng, 0.1);
  QuadraticObjective obj(h_mat, VectorXd::Zero(p));
  std::normal_distribution<double> normal;
  VectorXd h(p);
  for (int i = 0; i < p; ++i) h[i] = normal(rng);
  const VectorXd u0 = VectorXd::Constant(p, 1.0 / p);
  Simplex<double> set(p);

  InnerOptions opts;
  opts.max_iters = 3;
  const auto res = nfw::fw_quadratic(make_model(obj, h, u0, 1e-14), set, opts);
  CHECK(res.status == InnerStatus::kIterLimit);
  CHECK(res.iters == 3);
  CHECK(set.contains(res.u, 1e-10));
  CHECK(std::isfinite(res.gap));
}
