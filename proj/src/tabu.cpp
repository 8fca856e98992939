#include "portopt/tabu.hpp"

#include <algorithm>
#include <cmath>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

constexpr double kImproveTol = 1e-12;

int kind_offset(MoveKind kind) {
    switch (kind) {
        case MoveKind::Increase: return 0;
        case MoveKind::Decrease: return 1;
        case MoveKind::Swap: return 2;
    }
    return 0;
}

int full_tenure(MoveKind kind, const TabuParams& params) {
    switch (kind) {
        case MoveKind::Increase: return params.tenure_increase;
        case MoveKind::Decrease: return params.tenure_decrease;
        case MoveKind::Swap: return params.tenure_swap;
    }
    return 0;
}

}  // namespace

TabuState::TabuState(int n_assets)
    : tenures_(static_cast<std::size_t>(n_assets) * 3, 0) {}

void TabuState::reset() {
    std::fill(tenures_.begin(), tenures_.end(), 0);
    iteration = 0;
    stagnation = 0;
}

int TabuState::tenure(int asset, MoveKind kind) const {
    return tenures_[static_cast<std::size_t>(asset) * 3 +
                    static_cast<std::size_t>(kind_offset(kind))];
}

int& TabuState::slot(int asset, MoveKind kind) {
    return tenures_[static_cast<std::size_t>(asset) * 3 +
                    static_cast<std::size_t>(kind_offset(kind))];
}

void TabuState::record(const Move& selected, const TabuParams& params) {
    for (int& t : tenures_) {
        if (t > 0) --t;
    }
    slot(selected.target, selected.kind) = full_tenure(selected.kind, params);
}

bool is_tabu(const TabuState& state, const Move& move) {
    if (move.kind == MoveKind::Swap) {
        return state.tenure(move.displaced, MoveKind::Swap) > 0;
    }
    return state.tenure(move.target, move.kind) > 0;
}

const Neighbor& select_admissible(const std::vector<Neighbor>& neighbors,
                                  const TabuState& state, double incumbent_objective,
                                  const Instance& inst, double lambda) {
    if (neighbors.empty()) {
        throw EmptyNeighborhood("select_admissible: no neighbors to choose from");
    }

    int best_admissible = -1;
    double best_admissible_obj = 0;
    int best_any = -1;
    double best_any_obj = 0;
    for (int idx = 0; idx < static_cast<int>(neighbors.size()); ++idx) {
        const Neighbor& nb = neighbors[static_cast<std::size_t>(idx)];
        const double obj = evaluate(nb.portfolio, inst, lambda).objective;
        if (best_any < 0 || obj < best_any_obj) {
            best_any = idx;
            best_any_obj = obj;
        }
        const bool admissible =
            !is_tabu(state, nb.move) || obj < incumbent_objective;  // aspiration
        if (admissible && (best_admissible < 0 || obj < best_admissible_obj)) {
            best_admissible = idx;
            best_admissible_obj = obj;
        }
    }
    const int chosen = best_admissible >= 0 ? best_admissible : best_any;
    return neighbors[static_cast<std::size_t>(chosen)];
}

Portfolio t1_search(const Portfolio& initial, double q, const Instance& inst,
                    const Constraints& c, const TabuParams& params, TabuState& state,
                    rng::Engine& gen, const TraceSink& trace) {
    Portfolio current = initial;
    Portfolio best = initial;
    double best_obj = evaluate(best, inst, c.lambda).objective;

    state.stagnation = 0;
    while (state.stagnation < params.stagnation_limit) {
        const std::vector<Neighbor> neighbors =
            enumerate_neighbors(current, q, inst, c, gen);
        const Neighbor& pick =
            select_admissible(neighbors, state, best_obj, inst, c.lambda);
        current = pick.portfolio;
        state.record(pick.move, params);
        ++state.iteration;

        const double obj = evaluate(current, inst, c.lambda).objective;
        if (obj < best_obj - kImproveTol) {
            best = current;
            best_obj = obj;
            state.stagnation = 0;
        } else {
            ++state.stagnation;
        }
        if (trace) {
            trace(TraceRow{state.iteration, obj, best_obj, pick.move.kind,
                           pick.move.target});
        }
    }
    return best;
}

}  // namespace portopt
