#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "portopt/instance.hpp"
#include "portopt/neighborhood.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/random.hpp"

namespace portopt {

struct TabuParams {
    int tenure_increase = 3;
    int tenure_decrease = 3;
    int tenure_swap = 20;
    int stagnation_limit = 200;  // consecutive non-improving iterations
};

/// Per-(asset, move-kind) remaining tenures plus iteration bookkeeping.
///
/// A tenure is set to its full value when the corresponding move is applied
/// and every other entry decays by one per iteration, floored at zero.
class TabuState {
public:
    explicit TabuState(int n_assets);

    void reset();

    int tenure(int asset, MoveKind kind) const;

    /// Apply one iteration's bookkeeping: decay every tenure by one, then
    /// set the selected move's attribute to its full value. The attribute
    /// asset is the increased/decreased asset, or the entering asset for a
    /// swap ("the asset that has been added by the move").
    void record(const Move& selected, const TabuParams& params);

    std::int64_t iteration = 0;
    int stagnation = 0;

private:
    int& slot(int asset, MoveKind kind);
    std::vector<int> tenures_;  // 3 entries per asset: increase, decrease, swap
};

/// True when the move is currently forbidden. Increase/Decrease check the
/// target asset's tenure for that kind. A swap is forbidden when the asset
/// it would displace was itself recently added by a swap — i.e. the check
/// runs against `displaced`, the tenure having been recorded on that asset
/// when it entered.
bool is_tabu(const TabuState& state, const Move& move);

/// Minimum-objective neighbor among the admissible ones: non-tabu neighbors
/// plus tabu neighbors that beat the incumbent objective (aspiration). Ties
/// go to enumeration order. If everything is tabu and nothing aspirates,
/// the least-bad tabu neighbor is returned so the search always advances.
/// Throws EmptyNeighborhood.
const Neighbor& select_admissible(const std::vector<Neighbor>& neighbors,
                                  const TabuState& state, double incumbent_objective,
                                  const Instance& inst, double lambda);

struct TraceRow {
    std::int64_t iteration;
    double objective;            // objective after the applied move
    double incumbent;            // best objective so far
    MoveKind kind;
    int target;
};

using TraceSink = std::function<void(const TraceRow&)>;

/// One tabu-search run at fixed step size q: enumerate, select, apply, and
/// update tenures until `stagnation_limit` consecutive iterations fail to
/// improve the incumbent (strict improvement, absolute tolerance 1e-12).
/// Returns the incumbent. `state` persists for inspection and may carry
/// history; callers that want a fresh run reset it first.
Portfolio t1_search(const Portfolio& initial, double q, const Instance& inst,
                    const Constraints& c, const TabuParams& params, TabuState& state,
                    rng::Engine& gen, const TraceSink& trace = nullptr);

}  // namespace portopt
