#include "portopt/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "portopt/errors.hpp"

namespace portopt {

void Constraints::validate() const {
    if (k < 1) throw InfeasibleBounds("cardinality k must be positive, got " + std::to_string(k));
    if (epsilon < 0 || epsilon >= 1) {
        throw InfeasibleBounds("epsilon must lie in [0, 1), got " + std::to_string(epsilon));
    }
    if (delta <= 0 || delta > 1) {
        throw InfeasibleBounds("delta must lie in (0, 1], got " + std::to_string(delta));
    }
    if (epsilon >= delta) {
        throw InfeasibleBounds("epsilon must be below delta");
    }
    if (k * epsilon > 1.0) {
        throw InfeasibleBounds("k*epsilon = " + std::to_string(k * epsilon) +
                               " exceeds 1: lower bounds cannot fit");
    }
    if (k * delta < 1.0) {
        throw InfeasibleBounds("k*delta = " + std::to_string(k * delta) +
                               " is below 1: upper bounds cannot reach full investment");
    }
    if (lambda < 0 || lambda > 1) {
        throw InfeasibleBounds("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
}

Portfolio::Portfolio(std::vector<int> assets, std::vector<double> weights)
    : assets_(std::move(assets)), weights_(std::move(weights)) {
    if (assets_.size() != weights_.size()) {
        throw Error("portfolio asset and weight sequences differ in length");
    }
    std::unordered_set<int> seen;
    for (int a : assets_) {
        if (!seen.insert(a).second) {
            throw Error("duplicate asset id " + std::to_string(a) + " in portfolio");
        }
    }
    for (double w : weights_) {
        // zero is allowed (feasible when epsilon is 0); negative is not
        if (!(w >= 0)) {
            throw NonPositiveWeight("portfolio weight " + std::to_string(w) +
                                    " is negative");
        }
    }
}

int Portfolio::position_of(int asset_id) const {
    const auto it = std::find(assets_.begin(), assets_.end(), asset_id);
    return it == assets_.end() ? -1 : static_cast<int>(it - assets_.begin());
}

double Portfolio::weight_sum() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

Evaluation evaluate(const Portfolio& p, const Instance& inst, double lambda) {
    const int k = p.size();
    const auto& cov = inst.covariance();
    const int n = inst.size();
    for (int a : p.assets()) {
        if (a < 0 || a >= n) {
            throw IndexOutOfRange("portfolio asset " + std::to_string(a) +
                                  " outside instance of size " + std::to_string(n));
        }
    }
    double risk = 0;
    double ret = 0;
    for (int i = 0; i < k; ++i) {
        const int ai = p.asset(i);
        const double wi = p.weight(i);
        ret += inst.means()[ai] * wi;
        risk += wi * wi * cov(ai, ai);
        for (int j = i + 1; j < k; ++j) {
            risk += 2.0 * wi * p.weight(j) * cov(ai, p.asset(j));
        }
    }
    return Evaluation{lambda * risk - (1.0 - lambda) * ret, risk, ret};
}

namespace {

bool weights_feasible(const std::vector<double>& w, double epsilon, double delta) {
    double sum = 0;
    for (double x : w) {
        if (x < epsilon - kBoundTol || x > delta + kBoundTol) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= kWeightSumTol;
}

}  // namespace

Portfolio rescale(const Portfolio& p, double epsilon, double delta) {
    const int k = p.size();
    if (k * epsilon > 1.0 || k * delta < 1.0) {
        throw InfeasibleBounds("no feasible rescaling for k=" + std::to_string(k) +
                               ", epsilon=" + std::to_string(epsilon) +
                               ", delta=" + std::to_string(delta));
    }

    std::vector<double> w = p.weights();
    if (weights_feasible(w, epsilon, delta)) return p;

    double sum = 0;
    for (double x : w) {
        if (!(x > 0)) {
            throw NonPositiveWeight("rescale requires strictly positive raw weights, got " +
                                    std::to_string(x));
        }
        sum += x;
    }

    const double free_proportion = 1.0 - k * epsilon;
    for (double& x : w) x = epsilon + (x / sum) * free_proportion;

    // Cap weights above delta and redistribute over the rest. Redistribution
    // can push a further weight above delta, so repeat; the capped set only
    // grows, bounded by k.
    std::vector<bool> capped(static_cast<std::size_t>(k), false);
    int n_capped = 0;
    for (;;) {
        bool grew = false;
        for (int i = 0; i < k; ++i) {
            if (!capped[i] && w[i] > delta) {
                capped[i] = true;
                ++n_capped;
                grew = true;
            }
        }
        if (!grew) break;

        const double free = 1.0 - ((k - n_capped) * epsilon + n_capped * delta);
        if (free < 0) {
            throw InfeasibleBounds("capped weights leave no room for the lower bounds");
        }
        double rest = 0;
        for (int i = 0; i < k; ++i)
            if (!capped[i]) rest += w[i];
        for (int i = 0; i < k; ++i) {
            if (capped[i]) {
                w[i] = delta;
            } else {
                w[i] = rest > 0 ? epsilon + (w[i] / rest) * free
                                : epsilon + free / (k - n_capped);
            }
        }
    }

    return Portfolio(p.assets(), std::move(w));
}

bool is_feasible(const Portfolio& p, const Constraints& c) {
    if (p.size() != c.k) return false;
    return weights_feasible(p.weights(), c.epsilon, c.delta);
}

}  // namespace portopt
