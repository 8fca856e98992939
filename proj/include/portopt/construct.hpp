#pragma once

#include <cstdint>
#include <vector>

#include "portopt/instance.hpp"
#include "portopt/portfolio.hpp"

namespace portopt {

/// How the initial asset set is chosen.
enum class InitMode {
    SharpeGreedy,  ///< top-k assets by return/risk ratio (default)
    RandomBest,    ///< a fresh random k-subset per trial, best kept
};

struct ConstructParams {
    int trials = 10000;          ///< number of random weight trials
    std::uint64_t seed = 42;
    InitMode mode = InitMode::SharpeGreedy;
};

/// Asset ids sorted by Sharpe ratio (mean/std) descending, ties by ascending
/// id. Zero-std assets with positive mean rank first (by mean descending);
/// zero-std assets with non-positive mean rank last.
std::vector<int> sharpe_rank(const Instance& inst);

/// Builds the initial feasible solution: the asset set is the top-k by
/// sharpe_rank; each trial draws every weight uniformly from [epsilon,
/// delta], renormalizes to sum 1, repairs with rescale and keeps the lowest
/// objective (ties go to the lowest trial index).
///
/// Trials use per-trial derived random streams, so the result is identical
/// for any thread count and trial prefixes are stable: raising `trials`
/// never worsens the kept best.
///
/// threads == 0 means use all available cores.
Portfolio construct_initial(const Instance& inst, const Constraints& c,
                            const ConstructParams& params, int threads = 0);

/// Plain sequential reference implementation; bit-identical to
/// construct_initial. Kept for testing and benchmarking.
Portfolio construct_initial_serial(const Instance& inst, const Constraints& c,
                                   const ConstructParams& params);

}  // namespace portopt
