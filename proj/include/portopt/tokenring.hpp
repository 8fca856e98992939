#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "portopt/construct.hpp"
#include "portopt/instance.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/tabu.hpp"

namespace portopt {

/// Step-size schedule for the token-ring driver: a warm-up step followed by
/// a descending arithmetic sweep.
struct Schedule {
    double q0 = 5.2;
    std::vector<double> steps;  // 5.0, 4.8, ..., 0.2

    static Schedule standard();
};

struct PassSummary {
    int pass;                      // 0 = warm-up, then 1, 2, ...
    std::int64_t t1_invocations;   // cumulative
    double best_objective;         // after this pass
};

using SummarySink = std::function<void(const PassSummary&)>;

/// Token-ring metaheuristic: construct an initial solution, run one
/// tabu search at the warm-up step, then sweep the schedule in full passes.
/// Every tabu run starts from the best portfolio found so far with freshly
/// zeroed tenures. Passes repeat while any step strictly improved the best
/// objective (tolerance 1e-12), with a defensive cap of 50 passes that
/// warns on stderr if it ever binds. `seed` drives both the construction
/// trials and the replacement draws inside the tabu runs, overriding
/// construct_params.seed. `threads` only affects the construction phase
/// (the ring itself is sequential by definition).
Portfolio t2_search(const Instance& inst, const Constraints& c,
                    ConstructParams construct_params, const TabuParams& tabu_params,
                    std::uint64_t seed, const Schedule& schedule = Schedule::standard(),
                    const SummarySink& summary = nullptr, int threads = 0,
                    const TraceSink& trace = nullptr);

}  // namespace portopt
