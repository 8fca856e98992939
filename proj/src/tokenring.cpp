#include "portopt/tokenring.hpp"

#include <iostream>

#include "portopt/random.hpp"

namespace portopt {

namespace {

constexpr double kImproveTol = 1e-12;
constexpr int kMaxPasses = 50;
// tag separating the move-replacement stream from the construction trials
constexpr std::uint64_t kMoveStreamTag = 0x6d6f7665;

}  // namespace

Schedule Schedule::standard() {
    Schedule s;
    s.q0 = 5.2;
    s.steps.reserve(25);
    for (int i = 0; i < 25; ++i) {
        s.steps.push_back(static_cast<double>(50 - 2 * i) / 10.0);
    }
    return s;
}

Portfolio t2_search(const Instance& inst, const Constraints& c,
                    ConstructParams construct_params, const TabuParams& tabu_params,
                    std::uint64_t seed, const Schedule& schedule,
                    const SummarySink& summary, int threads, const TraceSink& trace) {
    construct_params.seed = seed;
    rng::Engine moves(rng::derive_seed(seed, kMoveStreamTag));

    Portfolio best = construct_initial(inst, c, construct_params, threads);
    double best_obj = evaluate(best, inst, c.lambda).objective;

    TabuState state(inst.size());
    std::int64_t t1_calls = 0;
    auto run_step = [&](double q) -> bool {
        state.reset();
        Portfolio candidate =
            t1_search(best, q, inst, c, tabu_params, state, moves, trace);
        ++t1_calls;
        const double obj = evaluate(candidate, inst, c.lambda).objective;
        if (obj < best_obj - kImproveTol) {
            best = std::move(candidate);
            best_obj = obj;
            return true;
        }
        return false;
    };

    run_step(schedule.q0);
    if (summary) summary(PassSummary{0, t1_calls, best_obj});

    int pass = 0;
    bool improved = true;
    while (improved && pass < kMaxPasses) {
        ++pass;
        improved = false;
        for (const double q : schedule.steps) {
            if (run_step(q)) improved = true;
        }
        if (summary) summary(PassSummary{pass, t1_calls, best_obj});
    }
    if (improved) {
        std::cerr << "warning: token-ring stopped at the " << kMaxPasses
                  << "-pass cap while still improving\n";
    }
    return best;
}

}  // namespace portopt
