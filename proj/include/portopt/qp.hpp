#pragma once

#include <Eigen/Dense>

#include "portopt/instance.hpp"

namespace portopt {

struct QpResult {
    Eigen::VectorXd x;     // weights, length n, in [0, 1], sum 1
    double variance;       // x' Sigma x
    double ret;            // mu' x
    double kkt_residual;   // max KKT violation at the returned point
    int iterations;
};

/// Global minimum-variance portfolio: min x'Sigma x over the simplex with
/// box bounds [0, 1]. Throws NotConverged if the active-set iteration cap
/// is hit with a residual above tol.
QpResult solve_gmv(const Instance& inst, double tol = 1e-9);

/// Markowitz minimum-variance portfolio at target return mu_p:
///   min x'Sigma x   s.t.  mu'x >= mu_p,  sum x = 1,  0 <= x_i <= 1.
/// Solved as a primal active-set method on the box bounds. The return
/// constraint is handled in two stages: if the global minimum-variance
/// portfolio already meets mu_p it is returned; otherwise the constraint
/// binds at the optimum (the frontier is non-decreasing) and is solved as
/// an equality. `warm` optionally seeds the iteration with a nearby
/// solution, e.g. the previous point of a frontier sweep.
/// Throws Infeasible when mu_p lies outside [min mu_i, max mu_i] and
/// NotConverged on cap with residual above tol.
QpResult solve_qp_min_variance(const Instance& inst, double mu_p, double tol = 1e-9,
                               const Eigen::VectorXd* warm = nullptr);

namespace detail {

/// Core solver over prebuilt matrices so frontier sweeps can reuse them.
/// When with_return_row is true the equality system is [1'; mu'] x = [1; mu_p],
/// otherwise just sum-to-one.
QpResult qp_active_set(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu,
                       bool with_return_row, double mu_p, double tol,
                       const Eigen::VectorXd& start);

/// Feasible start for the equality-constrained stage: blends `base` (which
/// satisfies sum = 1 and the box) toward the unit vector on the max-mean
/// asset until mu'x = mu_p.
Eigen::VectorXd blend_start(const Eigen::VectorXd& mu, double mu_p,
                            const Eigen::VectorXd& base);

}  // namespace detail

}  // namespace portopt
