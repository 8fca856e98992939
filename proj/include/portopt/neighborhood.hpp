#pragma once

#include <vector>

#include "portopt/instance.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/random.hpp"

namespace portopt {

enum class MoveKind { Increase, Decrease, Swap };

/// A local-search step descriptor.
///
/// `target` is the asset acted upon: the increased asset, the decreased
/// asset, or the asset entering on a swap. `displaced` (-1 when unset) is
/// the asset that left the portfolio: the minimum-weight asset for Swap, or
/// the decreased asset itself when a decrease pushed it below the floor and
/// a random replacement entered.
struct Move {
    MoveKind kind;
    int target;
    int displaced = -1;
};

struct Neighbor {
    Portfolio portfolio;
    Move move;
};

/// Multiply asset i's weight by (1 + q), then rescale back to feasibility.
/// Asset set is unchanged. Throws AssetNotInPortfolio.
Neighbor increase_move(const Portfolio& p, int i, double q, const Constraints& c);

/// Multiply asset i's weight by (1 - q). If the raw result falls below
/// epsilon (or below zero, which q > 1 forces), asset i is replaced by a
/// uniformly random asset outside the portfolio; the entrant inherits
/// max(raw, epsilon), floored strictly positive so rescale stays legal.
/// Rescale is applied last. Throws AssetNotInPortfolio, and
/// NoReplacementAvailable when replacement is needed but k = n.
Neighbor decrease_move(const Portfolio& p, int i, double q, const Constraints& c,
                       const Instance& inst, rng::Engine& gen);

/// Replace the minimum-weight asset (ties: lowest asset id) with asset j,
/// which inherits its weight; the weight multiset is untouched, so no
/// rescale is needed. Throws AssetAlreadyInPortfolio.
Neighbor swap_move(const Portfolio& p, int j, const Constraints& c);

/// Full neighborhood of p at step size q: k Increase neighbors in list
/// order, then k Decrease neighbors in list order, then (n - k) Swap
/// neighbors by ascending entering-asset id. When k = n a Decrease that
/// would need a replacement clamps the asset at the floor instead, so the
/// enumeration never throws NoReplacementAvailable.
std::vector<Neighbor> enumerate_neighbors(const Portfolio& p, double q,
                                          const Instance& inst, const Constraints& c,
                                          rng::Engine& gen);

}  // namespace portopt
