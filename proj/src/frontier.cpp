#include "portopt/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "portopt/errors.hpp"
#include "portopt/qp.hpp"
#include "portopt/random.hpp"
#include "portopt/tokenring.hpp"

namespace portopt {

namespace {

constexpr int kUefChunk = 32;
constexpr double kDenomGuard = 1e-15;

int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

Portfolio to_portfolio(const Eigen::VectorXd& x) {
    std::vector<int> assets;
    std::vector<double> weights;
    for (int i = 0; i < x.size(); ++i) {
        if (x[i] > kBoundTol) {
            assets.push_back(i);
            weights.push_back(x[i]);
        }
    }
    return Portfolio(std::move(assets), std::move(weights));
}

Frontier dominance_filter(std::vector<FrontierPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.risk != b.risk) return a.risk < b.risk;
        return a.ret < b.ret;
    });
    Frontier out;
    for (FrontierPoint& p : pts) {
        if (out.points.empty()) {
            out.points.push_back(std::move(p));
            continue;
        }
        FrontierPoint& back = out.points.back();
        if (p.ret <= back.ret) continue;          // dominated: no extra return
        if (p.risk == back.risk) {
            back = std::move(p);                  // same risk, strictly better return
        } else {
            out.points.push_back(std::move(p));
        }
    }
    return out;
}

Frontier uef_impl(const Instance& inst, int n_points, double tol, int threads) {
    if (n_points < 2) throw Error("uef: need at least 2 points");
    const Eigen::MatrixXd sigma = inst.covariance();
    const Eigen::VectorXd mu = inst.means();
    const QpResult gmv = detail::qp_active_set(
        sigma, mu, /*with_return_row=*/false, mu.minCoeff(), tol,
        Eigen::VectorXd::Constant(inst.size(), 1.0 / inst.size()));

    const double lo = gmv.ret;
    const double hi = mu.maxCoeff();
    std::vector<FrontierPoint> pts(static_cast<std::size_t>(n_points));
    const int n_chunks = (n_points + kUefChunk - 1) / kUefChunk;

    std::exception_ptr failure = nullptr;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads != 1)
#endif
    for (int chunk = 0; chunk < n_chunks; ++chunk) {
        try {
            Eigen::VectorXd warm = gmv.x;
            const int begin = chunk * kUefChunk;
            const int end = std::min(n_points, begin + kUefChunk);
            for (int i = begin; i < end; ++i) {
                const double mu_p =
                    lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(n_points - 1);
                QpResult res;
                if (mu_p <= gmv.ret + 1e-12) {
                    res = gmv;
                } else {
                    const bool warm_ok = mu.dot(warm) <= mu_p;
                    res = detail::qp_active_set(
                        sigma, mu, /*with_return_row=*/true, mu_p, tol,
                        detail::blend_start(mu, mu_p, warm_ok ? warm : gmv.x));
                }
                warm = res.x;
                FrontierPoint& p = pts[static_cast<std::size_t>(i)];
                p.risk = res.variance;
                p.ret = res.ret;
                p.portfolio = to_portfolio(res.x);
            }
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical
#endif
            {
                if (!failure) failure = std::current_exception();
            }
        }
    }
#ifndef _OPENMP
    (void)threads;
#endif
    if (failure) std::rethrow_exception(failure);
    return dominance_filter(std::move(pts));
}

Frontier cef_impl(const Instance& inst, const Constraints& constraints,
                  double lambda_step, const ConstructParams& construct_params,
                  const TabuParams& tabu_params, std::uint64_t seed, int threads,
                  const LambdaTraceFactory& trace) {
    if (!(lambda_step > 0 && lambda_step <= 1)) {
        throw Error("cef: lambda_step must lie in (0, 1]");
    }
    const int n_lambdas = static_cast<int>(std::lround(1.0 / lambda_step)) + 1;
    const Schedule schedule = Schedule::standard();

    std::vector<FrontierPoint> pts(static_cast<std::size_t>(n_lambdas));
    std::exception_ptr failure = nullptr;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads != 1)
#endif
    for (int i = 0; i < n_lambdas; ++i) {
        try {
            Constraints c = constraints;
            c.lambda = std::min(1.0, static_cast<double>(i) * lambda_step);
            const TraceSink sink = trace ? trace(i, c.lambda) : TraceSink();
            const Portfolio best =
                t2_search(inst, c, construct_params, tabu_params,
                          seed + static_cast<std::uint64_t>(i), schedule, nullptr,
                          /*threads=*/1, sink);
            const Evaluation ev = evaluate(best, inst, c.lambda);
            FrontierPoint& p = pts[static_cast<std::size_t>(i)];
            p.risk = ev.risk;
            p.ret = ev.ret;
            p.portfolio = best;
            p.lambda = c.lambda;
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical
#endif
            {
                if (!failure) failure = std::current_exception();
            }
        }
    }
#ifndef _OPENMP
    (void)threads;
#endif
    if (failure) std::rethrow_exception(failure);

    std::sort(pts.begin(), pts.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.risk != b.risk) return a.risk < b.risk;
        return a.lambda.value_or(0) < b.lambda.value_or(0);
    });
    Frontier out;
    out.points = std::move(pts);
    return out;
}

// Shared 1-D piecewise-linear interpolation over (key, value) pairs with
// keys ascending; clamps outside the key range; flat segments return the
// left value.
double interpolate(const std::vector<std::pair<double, double>>& knots, double key) {
    if (knots.empty()) throw EmptyFrontier("interpolate: frontier has no points");
    if (key <= knots.front().first) return knots.front().second;
    if (key >= knots.back().first) return knots.back().second;
    const auto it = std::lower_bound(
        knots.begin(), knots.end(), key,
        [](const std::pair<double, double>& kn, double k) { return kn.first < k; });
    if (it->first == key) return it->second;
    const auto prev = it - 1;
    const double span = it->first - prev->first;
    if (span <= 0) return prev->second;
    const double t = (key - prev->first) / span;
    return prev->second + (it->second - prev->second) * t;
}

std::vector<std::pair<double, double>> risk_to_ret(const Frontier& f) {
    std::vector<std::pair<double, double>> knots;
    knots.reserve(f.points.size());
    for (const FrontierPoint& p : f.points) knots.emplace_back(p.risk, p.ret);
    return knots;
}

std::vector<std::pair<double, double>> ret_to_risk(const Frontier& f) {
    std::vector<std::pair<double, double>> knots;
    knots.reserve(f.points.size());
    for (const FrontierPoint& p : f.points) knots.emplace_back(p.ret, p.risk);
    std::sort(knots.begin(), knots.end());
    return knots;
}

double percent_dev(double actual, double reference) {
    return std::abs(100.0 * (actual - reference) / reference);
}

}  // namespace

Frontier solve_uef(const Instance& inst, int n_points, double tol, int threads) {
    return uef_impl(inst, n_points, tol, resolve_threads(threads));
}

Frontier solve_uef_serial(const Instance& inst, int n_points, double tol) {
    return uef_impl(inst, n_points, tol, 1);
}

Frontier solve_cef(const Instance& inst, const Constraints& constraints,
                   double lambda_step, const ConstructParams& construct_params,
                   const TabuParams& tabu_params, std::uint64_t seed, int threads,
                   const LambdaTraceFactory& trace) {
    return cef_impl(inst, constraints, lambda_step, construct_params, tabu_params,
                    seed, resolve_threads(threads), trace);
}

Frontier solve_cef_serial(const Instance& inst, const Constraints& constraints,
                          double lambda_step, const ConstructParams& construct_params,
                          const TabuParams& tabu_params, std::uint64_t seed,
                          const LambdaTraceFactory& trace) {
    return cef_impl(inst, constraints, lambda_step, construct_params, tabu_params,
                    seed, 1, trace);
}

double interpolate_return(const Frontier& uef, double v) {
    return interpolate(risk_to_ret(uef), v);
}

double interpolate_risk(const Frontier& uef, double r) {
    return interpolate(ret_to_risk(uef), r);
}

double deviation_error(const FrontierPoint& point, const Frontier& uef) {
    const double r_hat = interpolate_return(uef, point.risk);
    const double v_hat = interpolate_risk(uef, point.ret);
    const bool x_ok = std::abs(r_hat) >= kDenomGuard;
    const bool y_ok = std::abs(v_hat) >= kDenomGuard;
    if (!x_ok && !y_ok) {
        for (const FrontierPoint& p : uef.points) {
            if (std::abs(p.risk - point.risk) <= 1e-12 &&
                std::abs(p.ret - point.ret) <= 1e-12) {
                return 0.0;
            }
        }
        return std::numeric_limits<double>::quiet_NaN();
    }
    double err = std::numeric_limits<double>::infinity();
    if (x_ok) err = std::min(err, percent_dev(point.ret, r_hat));
    if (y_ok) err = std::min(err, percent_dev(point.risk, v_hat));
    return err;
}

DeviationReport summary_metrics(const Frontier& cef, const Frontier& uef) {
    if (cef.empty() || uef.empty()) {
        throw EmptyFrontier("summary_metrics: both frontiers must be non-empty");
    }
    DeviationReport report;
    report.per_point.reserve(cef.points.size());

    std::vector<double> finite;
    double risk_sum = 0;
    int risk_n = 0;
    double ret_sum = 0;
    int ret_n = 0;
    for (const FrontierPoint& p : cef.points) {
        const double err = deviation_error(p, uef);
        report.per_point.push_back(err);
        if (std::isfinite(err)) finite.push_back(err);

        const double v_hat = interpolate_risk(uef, p.ret);
        if (std::abs(v_hat) >= kDenomGuard) {
            risk_sum += percent_dev(p.risk, v_hat);
            ++risk_n;
        }
        const double r_hat = interpolate_return(uef, p.risk);
        if (std::abs(r_hat) >= kDenomGuard) {
            ret_sum += percent_dev(p.ret, r_hat);
            ++ret_n;
        }
    }
    if (!finite.empty()) {
        std::sort(finite.begin(), finite.end());
        const std::size_t m = finite.size();
        report.median_error = (m % 2 == 1)
                                  ? finite[m / 2]
                                  : 0.5 * (finite[m / 2 - 1] + finite[m / 2]);
        double sum = 0;
        for (const double e : finite) sum += e;
        report.mean_error = sum / static_cast<double>(m);
    }
    report.risk_error = risk_n > 0 ? risk_sum / risk_n : 0.0;
    report.return_error = ret_n > 0 ? ret_sum / ret_n : 0.0;
    return report;
}

}  // namespace portopt
