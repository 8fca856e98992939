#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "portopt/construct.hpp"
#include "portopt/instance.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/tabu.hpp"

namespace portopt {

struct FrontierPoint {
    double risk = 0;   // portfolio variance (x axis)
    double ret = 0;    // expected return (y axis)
    std::optional<Portfolio> portfolio;
    std::optional<double> lambda;  // risk-aversion weight for heuristic points
};

struct Frontier {
    std::vector<FrontierPoint> points;  // sorted by risk ascending

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// Unconstrained efficient frontier: `n_points` target returns uniformly
/// spaced on [return of the global minimum-variance portfolio, max asset
/// mean], each solved as an exact QP, then dominance-filtered so return is
/// strictly increasing with risk. Solves run in fixed chunks of 32 with
/// warm starts chained inside each chunk, so results are identical for any
/// thread count; `threads <= 0` uses all cores.
Frontier solve_uef(const Instance& inst, int n_points = 2000, double tol = 1e-9,
                   int threads = 0);

/// Single-threaded reference for solve_uef; bit-identical output.
Frontier solve_uef_serial(const Instance& inst, int n_points = 2000,
                          double tol = 1e-9);

/// Builds a per-run trace sink for the lambda at the given sweep index;
/// may return an empty sink. Sinks from a non-null factory are invoked from
/// worker threads, so pass one only with a single-threaded sweep unless the
/// sinks synchronize themselves.
using LambdaTraceFactory = std::function<TraceSink(int lambda_index, double lambda)>;

/// Constrained efficient frontier: one token-ring run per lambda in
/// {0, lambda_step, ..., 1} (the last value clamped to exactly 1), each
/// seeded with seed + lambda-index. All solutions are kept, dominated or
/// not, and sorted by (risk, lambda). `constraints.lambda` is ignored.
Frontier solve_cef(const Instance& inst, const Constraints& constraints,
                   double lambda_step, const ConstructParams& construct_params,
                   const TabuParams& tabu_params, std::uint64_t seed,
                   int threads = 0, const LambdaTraceFactory& trace = nullptr);

/// Single-threaded reference for solve_cef; bit-identical output.
Frontier solve_cef_serial(const Instance& inst, const Constraints& constraints,
                          double lambda_step, const ConstructParams& construct_params,
                          const TabuParams& tabu_params, std::uint64_t seed,
                          const LambdaTraceFactory& trace = nullptr);

/// Linear interpolation of the frontier's return at risk v, clamped to the
/// end points outside the risk range. Throws EmptyFrontier.
double interpolate_return(const Frontier& uef, double v);

/// Linear interpolation of the frontier's risk at return r, clamped to the
/// end points outside the return range. Throws EmptyFrontier.
double interpolate_risk(const Frontier& uef, double r);

/// Percentage deviation of a point from the frontier: the smaller of the
/// vertical error (return compared against the frontier return at the same
/// risk) and the horizontal error (risk compared against the frontier risk
/// at the same return), each as |100 * (actual - frontier) / frontier|.
/// A direction whose interpolated denominator is below 1e-15 is excluded;
/// if both are excluded the error is 0 when the point matches a frontier
/// point within 1e-12 and NaN (undefined) otherwise.
double deviation_error(const FrontierPoint& point, const Frontier& uef);

struct DeviationReport {
    std::vector<double> per_point;  // deviation_error per CEF point
    double median_error = 0;
    double mean_error = 0;
    double risk_error = 0;    // mean |100 (uef_risk - risk) / uef_risk| at fixed return
    double return_error = 0;  // mean |100 (uef_ret - ret) / uef_ret| at fixed risk
    double time_seconds = 0;  // attached by the caller, not computed here
};

/// Aggregate deviation metrics of a heuristic frontier against the exact
/// one. NaN per-point errors (see deviation_error) are excluded from the
/// aggregates. Throws EmptyFrontier when either frontier is empty.
DeviationReport summary_metrics(const Frontier& cef, const Frontier& uef);

}  // namespace portopt
