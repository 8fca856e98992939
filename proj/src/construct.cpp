#include "portopt/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "portopt/errors.hpp"
#include "portopt/random.hpp"

namespace portopt {

namespace {

// strictly inside (0,1) so renormalized weights stay positive for rescale
double uniform_open(rng::Engine& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

struct TrialOutcome {
    Portfolio portfolio;
    double objective;
};

TrialOutcome run_trial(const Instance& inst, const Constraints& c,
                       const ConstructParams& params, const std::vector<int>& greedy_assets,
                       int trial) {
    rng::Engine gen(rng::derive_seed(params.seed, static_cast<std::uint64_t>(trial)));

    std::vector<int> assets;
    if (params.mode == InitMode::SharpeGreedy) {
        assets = greedy_assets;
    } else {
        // fresh random k-subset per trial (partial Fisher-Yates)
        std::vector<int> pool(static_cast<std::size_t>(inst.size()));
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < c.k; ++i) {
            const std::size_t j = i + rng::uniform_index(gen, pool.size() - i);
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        }
        assets.assign(pool.begin(), pool.begin() + c.k);
    }

    std::vector<double> w(static_cast<std::size_t>(c.k));
    double sum = 0;
    for (double& x : w) {
        x = c.epsilon + (c.delta - c.epsilon) * uniform_open(gen);
        sum += x;
    }
    for (double& x : w) x /= sum;

    Portfolio p = rescale(Portfolio(std::move(assets), std::move(w)), c.epsilon, c.delta);
    const double objective = evaluate(p, inst, c.lambda).objective;
    return TrialOutcome{std::move(p), objective};
}

Portfolio best_of_trials(const Instance& inst, const Constraints& c,
                         const ConstructParams& params, int threads) {
    c.validate();
    if (params.trials < 1) throw Error("construct: trials must be >= 1");
    if (c.k > inst.size()) {
        throw InfeasibleBounds("construct: k = " + std::to_string(c.k) +
                               " exceeds the asset universe of " +
                               std::to_string(inst.size()));
    }

    std::vector<int> greedy_assets;
    if (params.mode == InitMode::SharpeGreedy) {
        const std::vector<int> ranked = sharpe_rank(inst);
        greedy_assets.assign(ranked.begin(), ranked.begin() + c.k);
    }

    // Phase 1: objectives only. Each trial has its own derived stream, so
    // the argmin (ties to the lowest trial index) is thread-count invariant.
    std::vector<double> objective(static_cast<std::size_t>(params.trials));
#ifdef _OPENMP
    #pragma omp parallel for schedule(static) num_threads(threads) if (threads != 1)
#endif
    for (int t = 0; t < params.trials; ++t) {
        objective[static_cast<std::size_t>(t)] =
            run_trial(inst, c, params, greedy_assets, t).objective;
    }
#ifndef _OPENMP
    (void)threads;
#endif

    int best = 0;
    for (int t = 1; t < params.trials; ++t) {
        if (objective[static_cast<std::size_t>(t)] < objective[static_cast<std::size_t>(best)]) {
            best = t;
        }
    }

    // Phase 2: rebuild the winning trial.
    return run_trial(inst, c, params, greedy_assets, best).portfolio;
}

}  // namespace

std::vector<int> sharpe_rank(const Instance& inst) {
    // ordering classes: zero-std positive-mean first, finite ratios next,
    // zero-std non-positive-mean last
    auto cls = [&](int a) {
        if (inst.std_dev(a) > 0) return 1;
        return inst.mean_return(a) > 0 ? 0 : 2;
    };
    std::vector<int> ids(static_cast<std::size_t>(inst.size()));
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        const int ca = cls(a);
        const int cb = cls(b);
        if (ca != cb) return ca < cb;
        if (ca == 0) {
            if (inst.mean_return(a) != inst.mean_return(b)) {
                return inst.mean_return(a) > inst.mean_return(b);
            }
            return a < b;
        }
        if (ca == 1) {
            const double ra = inst.mean_return(a) / inst.std_dev(a);
            const double rb = inst.mean_return(b) / inst.std_dev(b);
            if (ra != rb) return ra > rb;
            return a < b;
        }
        return a < b;
    });
    return ids;
}

Portfolio construct_initial(const Instance& inst, const Constraints& c,
                            const ConstructParams& params, int threads) {
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    threads = 1;
#endif
    return best_of_trials(inst, c, params, threads);
}

Portfolio construct_initial_serial(const Instance& inst, const Constraints& c,
                                   const ConstructParams& params) {
    return best_of_trials(inst, c, params, 1);
}

}  // namespace portopt
