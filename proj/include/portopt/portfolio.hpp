#pragma once

#include <vector>

#include "portopt/instance.hpp"

namespace portopt {

/// Weights must sum to 1 within this tolerance.
inline constexpr double kWeightSumTol = 1e-9;
/// Slack allowed on the per-asset bound checks.
inline constexpr double kBoundTol = 1e-12;

/// Cardinality and quantity constraints plus the scalarization weight.
struct Constraints {
    int k = 10;              ///< exact number of assets held
    double epsilon = 0.01;   ///< per-asset lower bound, in [0, 1)
    double delta = 1.0;      ///< per-asset upper bound, in (0, 1]
    double lambda = 0.5;     ///< risk aversion, in [0, 1]

    /// Throws InfeasibleBounds when no feasible portfolio exists
    /// (k*epsilon > 1, k*delta < 1, epsilon >= delta) or lambda is outside
    /// [0, 1].
    void validate() const;
};

/// A candidate solution: the held assets L and their capital fractions S,
/// positionally paired. Immutable; operations return new values.
class Portfolio {
public:
    /// Throws NonPositiveWeight on a negative weight and Error on duplicate or
    /// mismatched inputs.
    Portfolio(std::vector<int> assets, std::vector<double> weights);

    int size() const { return static_cast<int>(assets_.size()); }
    const std::vector<int>& assets() const { return assets_; }
    const std::vector<double>& weights() const { return weights_; }
    int asset(int pos) const { return assets_[static_cast<std::size_t>(pos)]; }
    double weight(int pos) const { return weights_[static_cast<std::size_t>(pos)]; }

    /// Position of an asset id, or -1 when absent.
    int position_of(int asset_id) const;
    bool contains(int asset_id) const { return position_of(asset_id) >= 0; }

    double weight_sum() const;

private:
    std::vector<int> assets_;
    std::vector<double> weights_;
};

/// Scalarized objective value and its risk/return decomposition.
struct Evaluation {
    double objective = 0;  ///< lambda*risk - (1-lambda)*ret; lower is better
    double risk = 0;       ///< portfolio variance
    double ret = 0;        ///< portfolio expected return
};

/// Evaluates risk, return and the scalarized objective of a portfolio.
Evaluation evaluate(const Portfolio& p, const Instance& inst, double lambda);

/// Maps raw positive weights onto the feasible polytope (sum equals 1,
/// every weight in [epsilon, delta]).
///
/// Already-feasible input is returned unchanged, which makes the operation
/// idempotent. Otherwise: pass 1 sets w_i = eps + (w_i / sum) * (1 - k*eps);
/// pass 2 caps weights exceeding delta and redistributes proportionally over
/// the rest, repeating until no weight exceeds delta (the capped set only
/// grows, so this terminates).
Portfolio rescale(const Portfolio& p, double epsilon, double delta);

/// True iff cardinality equals c.k, weights sum to 1 within kWeightSumTol
/// and every weight lies in [epsilon - kBoundTol, delta + kBoundTol].
bool is_feasible(const Portfolio& p, const Constraints& c);

}  // namespace portopt
