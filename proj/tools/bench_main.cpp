// Compares the OpenMP kernels against their single-threaded reference
// implementations: wall-clock speedup plus a bit-for-bit result check.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "portopt/construct.hpp"
#include "portopt/frontier.hpp"
#include "portopt/instance.hpp"
#include "portopt/tabu.hpp"

namespace {

double time_s(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - t0;
    return d.count();
}

bool same_portfolio(const portopt::Portfolio& a, const portopt::Portfolio& b) {
    return a.assets() == b.assets() && a.weights() == b.weights();
}

bool same_frontier(const portopt::Frontier& a, const portopt::Frontier& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.points[i].risk != b.points[i].risk) return false;
        if (a.points[i].ret != b.points[i].ret) return false;
    }
    return true;
}

void report(const char* kernel, double serial_s, double parallel_s, bool identical) {
    std::printf("%-12s %10.3fs %10.3fs %7.2fx   %s\n", kernel, serial_s, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP kernel comparison"};
    std::string instance_path;
    int threads = 0;
    int trials = 20000;
    int uef_points = 512;
    double lambda_step = 0.25;
    app.add_option("instance", instance_path, "benchmark instance file")->required();
    app.add_option("--parallel", threads, "worker threads (0 = all cores)");
    app.add_option("--t-trials", trials, "construction trials");
    app.add_option("--uef-points", uef_points, "frontier sweep size");
    app.add_option("--lambda-step", lambda_step, "heuristic sweep step");
    CLI11_PARSE(app, argc, argv);

    try {
        const portopt::Instance inst =
            portopt::Instance::parse_orlib_file(instance_path);
        portopt::Constraints c;
        c.k = std::min(10, inst.size());
        portopt::ConstructParams cp;
        cp.trials = trials;
        const portopt::TabuParams tp;

        std::printf("n = %d assets, %d threads requested\n", inst.size(), threads);
        std::printf("%-12s %11s %11s %8s\n", "kernel", "serial", "parallel",
                    "speedup");

        portopt::Portfolio ps({0}, {1.0});
        portopt::Portfolio pp({0}, {1.0});
        const double s1 =
            time_s([&] { ps = portopt::construct_initial_serial(inst, c, cp); });
        const double p1 =
            time_s([&] { pp = portopt::construct_initial(inst, c, cp, threads); });
        report("construct", s1, p1, same_portfolio(ps, pp));

        portopt::Frontier us, up;
        const double s2 =
            time_s([&] { us = portopt::solve_uef_serial(inst, uef_points); });
        const double p2 =
            time_s([&] { up = portopt::solve_uef(inst, uef_points, 1e-9, threads); });
        report("uef", s2, p2, same_frontier(us, up));

        portopt::Frontier cs, cpar;
        const double s3 = time_s(
            [&] { cs = portopt::solve_cef_serial(inst, c, lambda_step, cp, tp, 42); });
        const double p3 = time_s([&] {
            cpar = portopt::solve_cef(inst, c, lambda_step, cp, tp, 42, threads);
        });
        report("cef", s3, p3, same_frontier(cs, cpar));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
