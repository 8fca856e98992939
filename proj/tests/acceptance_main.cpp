// Acceptance suite for the portfolio-selection library. Each criterion is a
// self-contained scenario with an explicit pass band and (where stated) a
// wall-clock budget, printed as one PASS/FAIL line. Select a subset by
// passing criterion numbers as arguments; no arguments runs everything.
// The process exits nonzero when any selected criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "portopt/construct.hpp"
#include "portopt/errors.hpp"
#include "portopt/frontier.hpp"
#include "portopt/instance.hpp"
#include "portopt/io.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/qp.hpp"
#include "portopt/random.hpp"
#include "portopt/tabu.hpp"
#include "portopt/tokenring.hpp"

#ifndef PORTOPT_DATA_DIR
#error "PORTOPT_DATA_DIR must point at the bundled instance files"
#endif

namespace {

using Clock = std::chrono::steady_clock;
using portopt::Constraints;
using portopt::ConstructParams;
using portopt::Frontier;
using portopt::Instance;
using portopt::Portfolio;
using portopt::TabuParams;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

std::string data_file(const char* name) {
    return std::string(PORTOPT_DATA_DIR) + "/" + name;
}

const std::array<const char*, 5> kInstanceFiles = {
    "port1.txt", "port2.txt", "port3.txt", "port4.txt", "port5.txt"};

// ---------------------------------------------------------------------------
// criterion 1: the five bundled instances parse to the expected universe
// sizes with exactly symmetric covariance and diagonal equal to stddev^2.
Outcome criterion_1() {
    const Clock::time_point t0 = Clock::now();
    std::multiset<int> sizes;
    for (const char* name : kInstanceFiles) {
        const Instance inst = Instance::parse_orlib_file(data_file(name));
        sizes.insert(inst.size());
        const Eigen::MatrixXd& cov = inst.covariance();
        for (int i = 0; i < inst.size(); ++i) {
            const double diag_gap =
                std::abs(cov(i, i) - inst.std_dev(i) * inst.std_dev(i));
            if (diag_gap > 1e-12) {
                return {false, fmt("%s: diagonal/stddev mismatch %.3g at asset %d",
                                   name, diag_gap, i)};
            }
            for (int j = 0; j < i; ++j) {
                if (std::abs(cov(i, j) - cov(j, i)) > 1e-12) {
                    return {false, fmt("%s: asymmetric covariance at (%d,%d)", name,
                                       i, j)};
                }
            }
        }
    }
    const std::multiset<int> expected = {31, 85, 89, 98, 225};
    if (sizes != expected) {
        std::string got;
        for (const int s : sizes) got += std::to_string(s) + " ";
        return {false, "unexpected universe sizes: " + got};
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 1.0) return {false, fmt("%.2f s >= 1 s budget", elapsed)};
    return {true, fmt("5 files, n = {31,85,89,98,225}, %.2f s < 1 s", elapsed)};
}

// ---------------------------------------------------------------------------
// criterion 2: the QP solver agrees with a brute-force sweep of the 0.005
// simplex grid on 20 random dense PSD instances, 5 return targets each.

// Enumerates every weight vector whose entries are multiples of 1/units and
// sum to 1, tracking the minimum variance per return threshold. Return and
// variance are accumulated incrementally down the recursion.
struct GridSweep {
    int n = 0;
    int units = 200;
    double sig[5][5] = {};
    double mu[5] = {};
    std::array<double, 5> targets = {};
    std::array<double, 5> best = {};

    void run() {
        best.fill(std::numeric_limits<double>::infinity());
        const double dot[5] = {};
        recurse(0, units, 0.0, 0.0, dot);
    }

    void recurse(int depth, int units_left, double ret, double var,
                 const double dot[5]) {
        if (depth == n - 1) {
            const double x = static_cast<double>(units_left) / units;
            const double v = var + x * (2.0 * dot[depth] + sig[depth][depth] * x);
            const double r = ret + mu[depth] * x;
            for (int j = 0; j < 5; ++j) {
                if (r >= targets[j] - 1e-12 && v < best[j]) best[j] = v;
            }
            return;
        }
        double next_dot[5];
        for (int u = 0; u <= units_left; ++u) {
            const double x = static_cast<double>(u) / units;
            const double v = var + x * (2.0 * dot[depth] + sig[depth][depth] * x);
            const double r = ret + mu[depth] * x;
            for (int i = depth + 1; i < n; ++i) {
                next_dot[i] = dot[i] + sig[i][depth] * x;
            }
            recurse(depth + 1, units_left - u, r, v, next_dot);
        }
    }
};

Outcome criterion_2() {
    const Clock::time_point t0 = Clock::now();
    portopt::rng::Engine gen(20260825);
    std::normal_distribution<double> loading(0.0, 0.005);

    double worst_gap = 0;
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 4;

        // dense PSD covariance: two-factor loadings plus idiosyncratic noise
        Eigen::MatrixXd b(n, 2);
        for (int i = 0; i < n; ++i) {
            b(i, 0) = loading(gen);
            b(i, 1) = loading(gen);
        }
        Eigen::MatrixXd sigma = b * b.transpose();
        std::vector<double> means(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            sigma(i, i) += portopt::rng::uniform(gen, 5e-5, 2e-4);
            means[static_cast<std::size_t>(i)] =
                portopt::rng::uniform(gen, 0.001, 0.010);
        }
        const Instance inst = Instance::from_covariance(means, sigma);

        GridSweep sweep;
        sweep.n = n;
        const double lo = inst.means().minCoeff();
        const double hi = inst.means().maxCoeff();
        for (int i = 0; i < n; ++i) {
            sweep.mu[i] = inst.means()[i];
            for (int j = 0; j < n; ++j) sweep.sig[i][j] = inst.covariance()(i, j);
        }
        for (int j = 0; j < 5; ++j) {
            sweep.targets[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / 4.0;
        }
        sweep.run();

        for (int j = 0; j < 5; ++j) {
            const double target = sweep.targets[static_cast<std::size_t>(j)];
            const portopt::QpResult qp = portopt::solve_qp_min_variance(inst, target);
            const double gap =
                std::abs(qp.variance - sweep.best[static_cast<std::size_t>(j)]);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-4) {
                return {false,
                        fmt("instance %d (n=%d), target %d: |qp - grid| = %.3g > 1e-4",
                            t, n, j, gap)};
            }
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 60.0) return {false, fmt("%.1f s >= 60 s budget", elapsed)};
    return {true, fmt("20 instances x 5 targets, worst |qp - grid| %.2g <= 1e-4, "
                      "%.1f s < 60 s",
                      worst_gap, elapsed)};
}

// ---------------------------------------------------------------------------
// criterion 3: the weight-repair procedure keeps its contract on 10,000
// randomized cases: sum one, bounds respected, bitwise idempotent.
Outcome criterion_3() {
    const Clock::time_point t0 = Clock::now();
    portopt::rng::Engine gen(7);

    for (int t = 0; t < 10000; ++t) {
        const int k = 1 + static_cast<int>(portopt::rng::uniform_index(gen, 30));
        const double eps = portopt::rng::uniform(gen, 0.0, 1.0) < 0.1
                               ? 0.0
                               : portopt::rng::uniform(gen, 0.0, 0.9 / k);
        const double delta =
            portopt::rng::uniform(gen, 1.0 / k, 1.0);

        std::vector<int> assets(static_cast<std::size_t>(k));
        std::vector<double> weights(static_cast<std::size_t>(k));
        // strictly positive weights spanning many orders of magnitude
        const double scale =
            std::pow(10.0, portopt::rng::uniform(gen, -4.0, 4.0));
        for (int i = 0; i < k; ++i) {
            assets[static_cast<std::size_t>(i)] = i;
            weights[static_cast<std::size_t>(i)] =
                scale * (1e-6 +
                         portopt::rng::uniform(gen, 0.0, 1.0) *
                             std::pow(10.0, portopt::rng::uniform(gen, -3.0, 3.0)));
        }

        const Portfolio repaired =
            portopt::rescale(Portfolio(assets, weights), eps, delta);
        const double sum_gap = std::abs(repaired.weight_sum() - 1.0);
        if (sum_gap > 1e-9) {
            return {false, fmt("case %d: weight sum off by %.3g", t, sum_gap)};
        }
        for (int i = 0; i < k; ++i) {
            const double w = repaired.weight(i);
            if (w < eps - 1e-12 || w > delta + 1e-12) {
                return {false, fmt("case %d: weight %.17g outside [%.3g, %.3g]", t, w,
                                   eps, delta)};
            }
        }
        const Portfolio again = portopt::rescale(repaired, eps, delta);
        for (int i = 0; i < k; ++i) {
            if (again.weight(i) != repaired.weight(i)) {
                return {false, fmt("case %d: not idempotent at position %d", t, i)};
            }
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 10.0) return {false, fmt("%.1f s >= 10 s budget", elapsed)};
    return {true, fmt("10000 cases, %.2f s < 10 s", elapsed)};
}

// ---------------------------------------------------------------------------
// criterion 4: on a 5-asset universe with k=2, one tabu run lands within 1%
// of exhaustive enumeration over all pairs and a 0.001 weight grid.
Outcome criterion_4() {
    const Clock::time_point t0 = Clock::now();

    const int n = 5;
    const std::vector<double> means = {0.010, 0.007, 0.005, 0.003, 0.001};
    const std::vector<double> stds = {0.02, 0.025, 0.03, 0.035, 0.04};
    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cov(i, j) = (i == j ? 1.0 : 0.3) * stds[static_cast<std::size_t>(i)] *
                        stds[static_cast<std::size_t>(j)];
        }
    }
    const Instance inst = Instance::from_covariance(means, cov);

    for (const double lambda : {0.0, 0.5, 1.0}) {
        Constraints c;
        c.k = 2;
        c.epsilon = 0.01;
        c.delta = 1.0;
        c.lambda = lambda;

        // exhaustive reference: every pair, first weight on a 0.001 grid
        double exact = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                for (int step = 0;; ++step) {
                    const double w = c.epsilon + 0.001 * step;
                    if (w > 1.0 - c.epsilon + 1e-12) break;
                    const Portfolio p({i, j}, {w, 1.0 - w});
                    exact = std::min(exact,
                                     portopt::evaluate(p, inst, lambda).objective);
                }
            }
        }

        ConstructParams cp;
        cp.trials = 1000;
        cp.seed = 42;
        const Portfolio initial = portopt::construct_initial(inst, c, cp);
        portopt::TabuState state(inst.size());
        portopt::rng::Engine moves(portopt::rng::derive_seed(42, 4));
        const TabuParams tp;
        const Portfolio found =
            portopt::t1_search(initial, /*q=*/1.0, inst, c, tp, state, moves);
        const double got = portopt::evaluate(found, inst, lambda).objective;

        const double rel = std::abs(got - exact) / std::abs(exact);
        if (!(rel <= 0.01)) {
            return {false, fmt("lambda %.1f: search %.8g vs exhaustive %.8g "
                               "(relative gap %.3g > 0.01)",
                               lambda, got, exact, rel)};
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 60.0) return {false, fmt("%.1f s >= 60 s budget", elapsed)};
    return {true, fmt("3 lambda values within 1%% of exhaustive, %.1f s < 60 s",
                      elapsed)};
}

// ---------------------------------------------------------------------------
// shared end-to-end pipeline for criteria 5, 6, 7, 8: exact frontier with
// 2000 points, heuristic frontier with 51 lambda values, deviation metrics.
struct E2eRun {
    Frontier uef;
    Frontier cef;
    portopt::DeviationReport report;
    double uef_seconds = 0;
    double cef_seconds = 0;
};

E2eRun run_pipeline(const std::string& path, std::uint64_t seed) {
    const Instance inst = Instance::parse_orlib_file(path);
    E2eRun run;

    Clock::time_point t0 = Clock::now();
    run.uef = portopt::solve_uef(inst, 2000);
    run.uef_seconds = seconds_since(t0);

    const Constraints constraints;  // k=10, epsilon=0.01, delta=1
    const ConstructParams cp;       // 10000 trials
    const TabuParams tp;
    t0 = Clock::now();
    run.cef = portopt::solve_cef(inst, constraints, 0.02, cp, tp, seed);
    run.cef_seconds = seconds_since(t0);

    run.report = portopt::summary_metrics(run.cef, run.uef);
    return run;
}

const E2eRun& hangseng_run() {
    static const E2eRun run = run_pipeline(data_file("port1.txt"), 42);
    return run;
}

Outcome criterion_5() {
    const E2eRun& run = hangseng_run();
    const double total = run.uef_seconds + run.cef_seconds;
    if (run.cef.size() != 51) {
        return {false, fmt("expected 51 heuristic points, got %zu", run.cef.size())};
    }
    if (!(run.report.mean_error <= 4.0)) {
        return {false, fmt("mean error %.4f > 4.0", run.report.mean_error)};
    }
    if (!(run.report.median_error <= 3.5)) {
        return {false, fmt("median error %.4f > 3.5", run.report.median_error)};
    }
    if (total >= 900.0) return {false, fmt("%.1f s >= 900 s budget", total)};
    return {true, fmt("mean %.4f <= 4.0, median %.4f <= 3.5, %.1f s < 900 s",
                      run.report.mean_error, run.report.median_error, total)};
}

Outcome criterion_6() {
    const E2eRun run = run_pipeline(data_file("port3.txt"), 42);
    const double total = run.uef_seconds + run.cef_seconds;
    if (!(run.report.mean_error <= 2.5)) {
        return {false, fmt("mean error %.4f > 2.5", run.report.mean_error)};
    }
    if (total >= 2700.0) return {false, fmt("%.1f s >= 2700 s budget", total)};
    return {true, fmt("mean %.4f <= 2.5, %.1f s < 2700 s", run.report.mean_error,
                      total)};
}

Outcome criterion_7() {
    const E2eRun& run = hangseng_run();
    if (!(run.report.return_error < run.report.risk_error)) {
        return {false, fmt("return error %.4f not below risk error %.4f",
                           run.report.return_error, run.report.risk_error)};
    }
    return {true, fmt("return error %.4f < risk error %.4f",
                      run.report.return_error, run.report.risk_error)};
}

Outcome criterion_8() {
    const E2eRun& first = hangseng_run();

    // an independent second execution with the same seed
    const Instance inst = Instance::parse_orlib_file(data_file("port1.txt"));
    const Constraints constraints;
    const ConstructParams cp;
    const TabuParams tp;
    const Frontier second = portopt::solve_cef(inst, constraints, 0.02, cp, tp, 42);

    const std::filesystem::path dir = std::filesystem::temp_directory_path();
    const std::string path_a = (dir / "portopt_acceptance_cef_a.csv").string();
    const std::string path_b = (dir / "portopt_acceptance_cef_b.csv").string();
    portopt::write_frontier_csv(first.cef, path_a);
    portopt::write_frontier_csv(second, path_b);

    const auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };
    const std::string bytes_a = slurp(path_a);
    const std::string bytes_b = slurp(path_b);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);

    if (bytes_a.empty() || bytes_a != bytes_b) {
        return {false, "repeated runs wrote different CSV bytes"};
    }
    return {true, fmt("two runs, byte-identical CSVs (%zu bytes)", bytes_a.size())};
}

// ---------------------------------------------------------------------------
// criterion 9: frontier monotonicity on every bundled instance, plus
// non-increasing per-pass best objective of the ring search at lambda 0.5.
Outcome criterion_9() {
    const Clock::time_point t0 = Clock::now();
    for (const char* name : kInstanceFiles) {
        const Instance inst = Instance::parse_orlib_file(data_file(name));

        const Frontier uef = portopt::solve_uef(inst, 2000);
        for (std::size_t i = 1; i < uef.size(); ++i) {
            if (uef.points[i].risk < uef.points[i - 1].risk) {
                return {false, fmt("%s: risk decreases at frontier point %zu", name, i)};
            }
            if (uef.points[i].ret <= uef.points[i - 1].ret) {
                return {false,
                        fmt("%s: return fails to increase at frontier point %zu", name,
                            i)};
            }
        }

        Constraints c;  // k=10, epsilon=0.01, delta=1, lambda=0.5
        std::vector<portopt::PassSummary> passes;
        portopt::t2_search(inst, c, ConstructParams{}, TabuParams{}, 42,
                           portopt::Schedule::standard(),
                           [&passes](const portopt::PassSummary& s) {
                               passes.push_back(s);
                           });
        if (passes.size() < 2) {
            return {false, fmt("%s: ring search finished after %zu passes", name,
                               passes.size())};
        }
        for (std::size_t i = 1; i < passes.size(); ++i) {
            if (passes[i].best_objective > passes[i - 1].best_objective) {
                return {false, fmt("%s: best objective rises at pass %d", name,
                                   passes[i].pass)};
            }
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 600.0) return {false, fmt("%.1f s >= 600 s budget", elapsed)};
    return {true, fmt("5 instances, exact frontier monotone and ring passes "
                      "non-increasing, %.1f s < 600 s",
                      elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::function<Outcome()>> criteria = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3},
        {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
        {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        try {
            const int id = std::stoi(argv[i]);
            if (criteria.count(id) == 0) throw std::invalid_argument("range");
            selected.insert(id);
        } catch (const std::exception&) {
            std::fprintf(stderr, "usage: %s [criterion-number...]  (1..9)\n", argv[0]);
            return 2;
        }
    }
    if (selected.empty()) {
        for (const auto& [id, fn] : criteria) selected.insert(id);
    }

    bool all_pass = true;
    for (const int id : selected) {
        Outcome outcome;
        try {
            outcome = criteria.at(id)();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d: %s (%s)\n", id, outcome.pass ? "PASS" : "FAIL",
                    outcome.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
