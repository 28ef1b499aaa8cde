#ifndef NFW_BENCH_DATAGEN_HPP
#define NFW_BENCH_DATAGEN_HPP

#include <cstdint>

#include "nfw/bench/dataset.hpp"

namespace nfw::bench {

/// Synthetic return matrix A = ones(n, p) + 0.1 N(0, 1), deterministic per
/// seed.  Rows whose sum is nonpositive (which would put the barycenter
/// start outside the domain) are redrawn.
Dataset gen_portfolio(Eigen::Index n, Eigen::Index p, std::uint64_t seed);

/// p points in R^n drawn i.i.d. from N(0, Sigma); Sigma defaults to the
/// identity when `covariance` is empty.  Requires p >= n; rank-deficient
/// draws are rejected and redrawn.
Dataset gen_dopt_points(Eigen::Index n, Eigen::Index p, std::uint64_t seed,
                        const Eigen::MatrixXd& covariance = Eigen::MatrixXd());

}  // namespace nfw::bench

#endif  // NFW_BENCH_DATAGEN_HPP
