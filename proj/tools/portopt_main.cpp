// portopt: cardinality- and bound-constrained Markowitz portfolio selection.
//
// Subcommands:
//   uef      exact unconstrained efficient frontier via quadratic programming
//   solve    heuristic constrained frontier via tabu search in a token ring
//   metrics  percentage-deviation report of a heuristic frontier vs the exact one

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "portopt/construct.hpp"
#include "portopt/errors.hpp"
#include "portopt/frontier.hpp"
#include "portopt/instance.hpp"
#include "portopt/io.hpp"
#include "portopt/tabu.hpp"

namespace {

std::string derive_svg_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".svg");
    return p.string();
}

std::string basename_of(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

const char* kind_name(portopt::MoveKind kind) {
    switch (kind) {
        case portopt::MoveKind::Increase: return "increase";
        case portopt::MoveKind::Decrease: return "decrease";
        case portopt::MoveKind::Swap: return "swap";
    }
    return "?";
}

struct UefConfig {
    std::string instance_path;
    std::string output = "uef.csv";
    std::string svg;
    int points = 2000;
    double tol = 1e-9;
    int parallel = 0;
};

void cmd_uef(const UefConfig& cfg) {
    const portopt::Instance inst = portopt::Instance::parse_orlib_file(cfg.instance_path);
    const auto t0 = std::chrono::steady_clock::now();
    const portopt::Frontier uef =
        portopt::solve_uef(inst, cfg.points, cfg.tol, cfg.parallel);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    const std::string svg = cfg.svg.empty() ? derive_svg_path(cfg.output) : cfg.svg;
    portopt::write_frontier_csv(uef, cfg.output);
    portopt::write_frontier_svg(
        uef, nullptr,
        "Unconstrained efficient frontier (" + basename_of(cfg.instance_path) + ")",
        svg);
    std::cout << "uef: " << uef.size() << " points -> " << cfg.output << ", " << svg
              << '\n'
              << "elapsed_seconds " << elapsed.count() << '\n';
}

struct SolveConfig {
    std::string instance_path;
    std::string output = "cef.csv";
    std::string svg;
    std::string trace;
    std::string init = "sharpe";
    int k = 10;
    double epsilon = 0.01;
    double delta = 1.0;
    double lambda_step = 0.02;
    int t_trials = 10000;
    std::uint64_t seed = 42;
    int parallel = 0;
};

void cmd_solve(const SolveConfig& cfg) {
    portopt::Constraints constraints;
    constraints.k = cfg.k;
    constraints.epsilon = cfg.epsilon;
    constraints.delta = cfg.delta;
    constraints.validate();  // report infeasible bounds before any solving

    const portopt::Instance inst = portopt::Instance::parse_orlib_file(cfg.instance_path);

    portopt::ConstructParams cp;
    cp.trials = cfg.t_trials;
    cp.mode = cfg.init == "random" ? portopt::InitMode::RandomBest
                                   : portopt::InitMode::SharpeGreedy;
    const portopt::TabuParams tp;

    const auto t0 = std::chrono::steady_clock::now();
    portopt::Frontier cef;
    if (!cfg.trace.empty()) {
        // Tracing serializes the sweep so rows from different lambdas never
        // interleave; results are identical to the parallel path.
        std::ofstream trace_out(cfg.trace, std::ios::trunc);
        if (!trace_out) throw portopt::IoError("cannot open " + cfg.trace);
        trace_out << "lambda,iteration,objective,incumbent,move,target\n";
        const portopt::LambdaTraceFactory factory =
            [&trace_out](int, double lambda) -> portopt::TraceSink {
            return [&trace_out, lambda](const portopt::TraceRow& row) {
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%.17g,%lld,%.17g,%.17g,%s,%d\n",
                              lambda, static_cast<long long>(row.iteration),
                              row.objective, row.incumbent, kind_name(row.kind),
                              row.target);
                trace_out << buf;
            };
        };
        cef = portopt::solve_cef_serial(inst, constraints, cfg.lambda_step, cp, tp,
                                        cfg.seed, factory);
    } else {
        cef = portopt::solve_cef(inst, constraints, cfg.lambda_step, cp, tp, cfg.seed,
                                 cfg.parallel);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    const std::string svg = cfg.svg.empty() ? derive_svg_path(cfg.output) : cfg.svg;
    portopt::write_frontier_csv(cef, cfg.output);
    portopt::write_frontier_svg(
        cef, &cef,
        "Constrained efficient frontier (" + basename_of(cfg.instance_path) + ")",
        svg);
    std::cout << "cef: " << cef.size() << " points -> " << cfg.output << ", " << svg
              << '\n'
              << "elapsed_seconds " << elapsed.count() << '\n';
}

struct MetricsConfig {
    std::string cef_path;
    std::string uef_path;
    std::string output = "report.csv";
    double time_seconds = 0;
};

void cmd_metrics(const MetricsConfig& cfg) {
    const portopt::Frontier cef = portopt::read_frontier_csv(cfg.cef_path);
    const portopt::Frontier uef = portopt::read_frontier_csv(cfg.uef_path);
    portopt::DeviationReport report = portopt::summary_metrics(cef, uef);
    report.time_seconds = cfg.time_seconds;
    portopt::write_report_csv(report, cfg.output);

    std::printf("median percentage error  %.4f\n", report.median_error);
    std::printf("mean percentage error    %.4f\n", report.mean_error);
    std::printf("risk error               %.4f\n", report.risk_error);
    std::printf("return error             %.4f\n", report.return_error);
    std::printf("time (s)                 %.1f\n", report.time_seconds);
    std::printf("report -> %s\n", cfg.output.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cardinality-constrained Markowitz portfolio selection"};
    app.require_subcommand(1);

    UefConfig uef_cfg;
    CLI::App* uef = app.add_subcommand(
        "uef", "Exact unconstrained efficient frontier (QP sweep)");
    uef->add_option("instance", uef_cfg.instance_path, "benchmark instance file")
        ->required();
    uef->add_option("-o,--output", uef_cfg.output, "frontier CSV path");
    uef->add_option("--svg", uef_cfg.svg, "plot path (default: output with .svg)");
    uef->add_option("--uef-points", uef_cfg.points, "number of target returns");
    uef->add_option("--tol", uef_cfg.tol, "QP convergence tolerance");
    uef->add_option("--parallel", uef_cfg.parallel, "worker threads (0 = all cores)");

    SolveConfig solve_cfg;
    CLI::App* solve = app.add_subcommand(
        "solve", "Heuristic constrained frontier (tabu search token ring)");
    solve->add_option("instance", solve_cfg.instance_path, "benchmark instance file")
        ->required();
    solve->add_option("-o,--output", solve_cfg.output, "frontier CSV path");
    solve->add_option("--svg", solve_cfg.svg, "plot path (default: output with .svg)");
    solve->add_option("-k,--k", solve_cfg.k, "number of assets to hold");
    solve->add_option("--epsilon", solve_cfg.epsilon, "minimum weight of a held asset");
    solve->add_option("--delta", solve_cfg.delta, "maximum weight of a held asset");
    solve->add_option("--lambda-step", solve_cfg.lambda_step,
                      "risk-aversion sweep step");
    solve->add_option("--t-trials", solve_cfg.t_trials,
                      "random trials for the initial solution");
    solve->add_option("--seed", solve_cfg.seed, "base RNG seed");
    solve->add_option("--parallel", solve_cfg.parallel,
                      "worker threads (0 = all cores)");
    solve->add_option("--trace", solve_cfg.trace,
                      "stream per-iteration search rows to this file (serializes "
                      "the sweep)");
    solve->add_option("--init", solve_cfg.init, "initial solution mode")
        ->check(CLI::IsMember({"sharpe", "random"}));

    MetricsConfig metrics_cfg;
    CLI::App* metrics = app.add_subcommand(
        "metrics", "Percentage-deviation report: heuristic vs exact frontier");
    metrics->add_option("--cef", metrics_cfg.cef_path, "heuristic frontier CSV")
        ->required();
    metrics->add_option("--uef", metrics_cfg.uef_path, "exact frontier CSV")
        ->required();
    metrics->add_option("-o,--output", metrics_cfg.output, "report CSV path");
    metrics->add_option("--time-seconds", metrics_cfg.time_seconds,
                        "wall-clock seconds to record in the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (uef->parsed()) cmd_uef(uef_cfg);
        if (solve->parsed()) cmd_solve(solve_cfg);
        if (metrics->parsed()) cmd_metrics(metrics_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
