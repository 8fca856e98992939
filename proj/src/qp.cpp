#include "portopt/qp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "portopt/errors.hpp"

namespace portopt {

namespace detail {

namespace {

constexpr double kBoundSnap = 1e-11;   // distance at which a variable counts as at-bound
constexpr double kStepTol = 1e-13;     // no-movement threshold for the KKT step

enum class BoundSide { Free, Lower, Upper };

struct WorkingSet {
    std::vector<BoundSide> side;

    explicit WorkingSet(int n) : side(static_cast<std::size_t>(n), BoundSide::Free) {}

    void refresh_from(const Eigen::VectorXd& x) {
        for (int i = 0; i < x.size(); ++i) {
            if (x[i] <= kBoundSnap) {
                side[static_cast<std::size_t>(i)] = BoundSide::Lower;
            } else if (x[i] >= 1.0 - kBoundSnap) {
                side[static_cast<std::size_t>(i)] = BoundSide::Upper;
            } else {
                side[static_cast<std::size_t>(i)] = BoundSide::Free;
            }
        }
    }

    std::vector<int> free_indices() const {
        std::vector<int> f;
        for (int i = 0; i < static_cast<int>(side.size()); ++i) {
            if (side[static_cast<std::size_t>(i)] == BoundSide::Free) f.push_back(i);
        }
        return f;
    }
};

// Stationarity gradient of the Lagrangian: g = 2 Sigma x - A' m.
Eigen::VectorXd lagrangian_gradient(const Eigen::MatrixXd& sigma,
                                    const Eigen::VectorXd& mu, bool with_return_row,
                                    const Eigen::VectorXd& x, const Eigen::VectorXd& m) {
    Eigen::VectorXd g = 2.0 * (sigma * x);
    g.array() -= m[0];
    if (with_return_row) g -= m[1] * mu;
    return g;
}

double kkt_residual(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu,
                    bool with_return_row, double mu_p, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& m, const WorkingSet& ws) {
    double r = std::abs(x.sum() - 1.0);
    const double port_ret = mu.dot(x);
    if (with_return_row) {
        r = std::max(r, std::abs(port_ret - mu_p));
    } else {
        r = std::max(r, std::max(0.0, mu_p - port_ret));
    }
    const Eigen::VectorXd g = lagrangian_gradient(sigma, mu, with_return_row, x, m);
    for (int i = 0; i < x.size(); ++i) {
        r = std::max(r, std::max(0.0, -x[i]));
        r = std::max(r, std::max(0.0, x[i] - 1.0));
        switch (ws.side[static_cast<std::size_t>(i)]) {
            case BoundSide::Free: r = std::max(r, std::abs(g[i])); break;
            case BoundSide::Lower: r = std::max(r, std::max(0.0, -g[i])); break;
            case BoundSide::Upper: r = std::max(r, std::max(0.0, g[i])); break;
        }
    }
    return r;
}

// Multipliers when no free variable pins them: least squares of A' m ~ 2 Sigma x.
Eigen::VectorXd fallback_multipliers(const Eigen::MatrixXd& sigma,
                                     const Eigen::VectorXd& mu, bool with_return_row,
                                     const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd at(n, with_return_row ? 2 : 1);
    at.col(0).setOnes();
    if (with_return_row) at.col(1) = mu;
    return at.colPivHouseholderQr().solve(2.0 * (sigma * x));
}

}  // namespace

Eigen::VectorXd blend_start(const Eigen::VectorXd& mu, double mu_p,
                            const Eigen::VectorXd& base) {
    int top = 0;
    mu.maxCoeff(&top);
    const double base_ret = mu.dot(base);
    const double span = mu[top] - base_ret;
    if (std::abs(span) < 1e-15) return base;
    double theta = (mu_p - base_ret) / span;
    theta = std::clamp(theta, 0.0, 1.0);
    Eigen::VectorXd x = (1.0 - theta) * base;
    x[top] += theta;
    return x;
}

QpResult qp_active_set(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu,
                       bool with_return_row, double mu_p, double tol,
                       const Eigen::VectorXd& start) {
    const int n = static_cast<int>(sigma.rows());
    const int n_eq = with_return_row ? 2 : 1;
    const int cap = 5 * n + 100;

    Eigen::VectorXd x = start;
    WorkingSet ws(n);
    ws.refresh_from(x);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(n_eq);

    int iter = 0;
    for (; iter < cap; ++iter) {
        const std::vector<int> free = ws.free_indices();
        const int f = static_cast<int>(free.size());

        Eigen::VectorXd target = x;  // proposed free-variable values
        if (f > 0) {
            // KKT system on the free block:
            //   [2 Sigma_FF  A_F'] [x_F]   [-2 Sigma_FB x_B       ]
            //   [A_F         0   ] [ m ] = [ b - A_B x_B          ]
            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(f + n_eq, f + n_eq);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(f + n_eq);
            for (int a = 0; a < f; ++a) {
                for (int b = 0; b < f; ++b) {
                    kkt(a, b) = 2.0 * sigma(free[static_cast<std::size_t>(a)],
                                            free[static_cast<std::size_t>(b)]);
                }
            }
            double bound_sum = 0.0;
            double bound_ret = 0.0;
            Eigen::VectorXd coupling = Eigen::VectorXd::Zero(f);
            for (int i = 0; i < n; ++i) {
                if (ws.side[static_cast<std::size_t>(i)] == BoundSide::Free) continue;
                const double xi = x[i];
                bound_sum += xi;
                bound_ret += mu[i] * xi;
                for (int a = 0; a < f; ++a) {
                    coupling[a] += 2.0 * sigma(free[static_cast<std::size_t>(a)], i) * xi;
                }
            }
            for (int a = 0; a < f; ++a) {
                kkt(a, f) = 1.0;
                kkt(f, a) = 1.0;
                if (with_return_row) {
                    kkt(a, f + 1) = mu[free[static_cast<std::size_t>(a)]];
                    kkt(f + 1, a) = mu[free[static_cast<std::size_t>(a)]];
                }
                rhs[a] = -coupling[a];
            }
            rhs[f] = 1.0 - bound_sum;
            if (with_return_row) rhs[f + 1] = mu_p - bound_ret;

            const Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
            for (int a = 0; a < f; ++a) {
                target[free[static_cast<std::size_t>(a)]] = sol[a];
            }
            // the KKT block carries +A', so the solved multiplier is the
            // negative of the m in g = 2 Sigma x - A' m
            m = -sol.segment(f, n_eq);
        } else {
            m = fallback_multipliers(sigma, mu, with_return_row, x);
        }

        // Step toward the proposal, stopping at the first blocking bound.
        double alpha = 1.0;
        int blocking = -1;
        bool blocking_upper = false;
        for (const int i : free) {
            const double d = target[i] - x[i];
            if (std::abs(d) < kStepTol) continue;
            double limit = 1.0;
            bool upper = false;
            if (d > 0 && target[i] > 1.0) {
                limit = (1.0 - x[i]) / d;
                upper = true;
            } else if (d < 0 && target[i] < 0.0) {
                limit = (0.0 - x[i]) / d;
            }
            if (limit < alpha) {
                alpha = limit;
                blocking = i;
                blocking_upper = upper;
            }
        }

        double moved = 0.0;
        for (const int i : free) {
            const double step = alpha * (target[i] - x[i]);
            moved = std::max(moved, std::abs(step));
            x[i] += step;
        }

        if (blocking >= 0) {
            // Pin the blocker exactly and keep iterating.
            x[blocking] = blocking_upper ? 1.0 : 0.0;
            ws.side[static_cast<std::size_t>(blocking)] =
                blocking_upper ? BoundSide::Upper : BoundSide::Lower;
            continue;
        }
        if (moved > kStepTol) continue;  // full step taken; re-solve to get clean m

        // Stationary on the free block: release the worst bound multiplier,
        // or stop if none violates. The working set is NOT rebuilt from x
        // here: a released variable still sits at its bound (and stays there
        // while the equalities pin it), and re-pinning it would prevent ever
        // accumulating the two free variables needed to leave a corner.
        const Eigen::VectorXd g =
            lagrangian_gradient(sigma, mu, with_return_row, x, m);
        int worst = -1;
        double worst_val = -tol;
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            switch (ws.side[static_cast<std::size_t>(i)]) {
                case BoundSide::Free: continue;
                case BoundSide::Lower: v = g[i]; break;
                case BoundSide::Upper: v = -g[i]; break;
            }
            if (v < worst_val) {
                worst_val = v;
                worst = i;
            }
        }
        if (worst < 0) break;
        ws.side[static_cast<std::size_t>(worst)] = BoundSide::Free;
    }

    QpResult res;
    res.x = x;
    res.variance = x.dot(sigma * x);
    res.ret = mu.dot(x);
    res.iterations = iter;
    res.kkt_residual = kkt_residual(sigma, mu, with_return_row, mu_p, x, m, ws);
    if (iter >= cap && res.kkt_residual > tol) {
        throw NotConverged("qp: active set hit the iteration cap (" +
                           std::to_string(cap) + ") with KKT residual " +
                           std::to_string(res.kkt_residual));
    }
    return res;
}

}  // namespace detail

QpResult solve_gmv(const Instance& inst, double tol) {
    const Eigen::MatrixXd sigma = inst.covariance();
    const Eigen::VectorXd mu = inst.means();
    const Eigen::VectorXd start =
        Eigen::VectorXd::Constant(inst.size(), 1.0 / inst.size());
    return detail::qp_active_set(sigma, mu, /*with_return_row=*/false,
                                 /*mu_p=*/mu.minCoeff(), tol, start);
}

QpResult solve_qp_min_variance(const Instance& inst, double mu_p, double tol,
                               const Eigen::VectorXd* warm) {
    const Eigen::MatrixXd sigma = inst.covariance();
    const Eigen::VectorXd mu = inst.means();
    const double lo = mu.minCoeff();
    const double hi = mu.maxCoeff();
    if (mu_p < lo - 1e-9 || mu_p > hi + 1e-9) {
        throw Infeasible("qp: target return " + std::to_string(mu_p) +
                         " outside the achievable range [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
    }
    const double mu_clamped = std::clamp(mu_p, lo, hi);

    QpResult gmv = detail::qp_active_set(
        sigma, mu, /*with_return_row=*/false, mu_clamped, tol,
        warm != nullptr ? *warm
                        : Eigen::VectorXd::Constant(inst.size(), 1.0 / inst.size()));
    if (gmv.ret >= mu_clamped - 1e-12) return gmv;

    // Blending only raises the return, so the base must sit at or below the
    // target for the start to satisfy the return equality exactly.
    const bool warm_usable = warm != nullptr && mu.dot(*warm) <= mu_clamped;
    const Eigen::VectorXd start =
        detail::blend_start(mu, mu_clamped, warm_usable ? *warm : gmv.x);
    return detail::qp_active_set(sigma, mu, /*with_return_row=*/true, mu_clamped,
                                 tol, start);
}

}  // namespace portopt
