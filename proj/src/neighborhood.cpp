#include "portopt/neighborhood.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

constexpr double kTinyWeight = 1e-12;  // positivity floor when epsilon = 0

std::vector<int> complement_of(const Portfolio& p, int n) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - p.size());
    for (int a = 0; a < n; ++a) {
        if (!p.contains(a)) out.push_back(a);
    }
    return out;
}

int position_or_throw(const Portfolio& p, int i, const char* op) {
    const int pos = p.position_of(i);
    if (pos < 0) {
        throw AssetNotInPortfolio(std::string(op) + ": asset " + std::to_string(i) +
                                  " is not in the portfolio");
    }
    return pos;
}

// Decrease body shared by the public move and the enumeration; `clamp_if_stuck`
// keeps the decreased asset at the floor when k = n leaves no replacement.
Neighbor decrease_impl(const Portfolio& p, int i, double q, const Constraints& c,
                       const Instance& inst, rng::Engine& gen, bool clamp_if_stuck) {
    const int pos = position_or_throw(p, i, "decrease_move");
    std::vector<int> assets = p.assets();
    std::vector<double> weights = p.weights();
    const double raw = weights[static_cast<std::size_t>(pos)] * (1.0 - q);

    Move move{MoveKind::Decrease, i, -1};
    if (raw < c.epsilon || raw <= 0.0) {
        const std::vector<int> outside = complement_of(p, inst.size());
        if (outside.empty()) {
            if (!clamp_if_stuck) {
                throw NoReplacementAvailable(
                    "decrease_move: asset " + std::to_string(i) +
                    " fell below the floor but every asset is already held");
            }
            weights[static_cast<std::size_t>(pos)] =
                std::max(c.epsilon, kTinyWeight);
        } else {
            const int entrant = outside[rng::uniform_index(gen, outside.size())];
            assets[static_cast<std::size_t>(pos)] = entrant;
            weights[static_cast<std::size_t>(pos)] =
                std::max({raw, c.epsilon, kTinyWeight});
            move.displaced = i;
        }
    } else {
        weights[static_cast<std::size_t>(pos)] = raw;
    }

    Portfolio next = rescale(Portfolio(std::move(assets), std::move(weights)),
                             c.epsilon, c.delta);
    return Neighbor{std::move(next), move};
}

}  // namespace

Neighbor increase_move(const Portfolio& p, int i, double q, const Constraints& c) {
    const int pos = position_or_throw(p, i, "increase_move");
    std::vector<double> weights = p.weights();
    weights[static_cast<std::size_t>(pos)] *= 1.0 + q;
    Portfolio next = rescale(Portfolio(p.assets(), std::move(weights)),
                             c.epsilon, c.delta);
    return Neighbor{std::move(next), Move{MoveKind::Increase, i, -1}};
}

Neighbor decrease_move(const Portfolio& p, int i, double q, const Constraints& c,
                       const Instance& inst, rng::Engine& gen) {
    return decrease_impl(p, i, q, c, inst, gen, /*clamp_if_stuck=*/false);
}

Neighbor swap_move(const Portfolio& p, int j, const Constraints& c) {
    (void)c;
    if (p.contains(j)) {
        throw AssetAlreadyInPortfolio("swap_move: asset " + std::to_string(j) +
                                      " is already in the portfolio");
    }
    int pos = 0;
    for (int t = 1; t < static_cast<int>(p.size()); ++t) {
        const double w = p.weight(t);
        const double best = p.weight(pos);
        if (w < best || (w == best && p.asset(t) < p.asset(pos))) pos = t;
    }
    const int displaced = p.asset(pos);
    std::vector<int> assets = p.assets();
    assets[static_cast<std::size_t>(pos)] = j;
    return Neighbor{Portfolio(std::move(assets), p.weights()),
                    Move{MoveKind::Swap, j, displaced}};
}

std::vector<Neighbor> enumerate_neighbors(const Portfolio& p, double q,
                                          const Instance& inst, const Constraints& c,
                                          rng::Engine& gen) {
    const int n = inst.size();
    const int k = static_cast<int>(p.size());
    std::vector<Neighbor> out;
    out.reserve(static_cast<std::size_t>(2 * k + (n - k)));

    for (int t = 0; t < k; ++t) {
        out.push_back(increase_move(p, p.asset(t), q, c));
    }
    for (int t = 0; t < k; ++t) {
        out.push_back(decrease_impl(p, p.asset(t), q, c, inst, gen,
                                    /*clamp_if_stuck=*/true));
    }
    for (int j = 0; j < n; ++j) {
        if (!p.contains(j)) out.push_back(swap_move(p, j, c));
    }
    return out;
}

}  // namespace portopt
