#pragma once

#include <cstdint>
#include <optional>

#include "perm/discrete.hpp"
#include "perm/shading.hpp"

namespace perm {
namespace prophet {

/// Per-round acceptance thresholds; stop at the first round i with
/// t_i >= thresholds[i], with forced acceptance of the last round.
struct ThresholdStrategy {
    std::vector<double> thresholds;
    std::size_t rounds() const { return thresholds.size(); }
};

/// Accept round i iff the quantile of t_i in the reference marginal is at
/// most eps[i]; eps[i] = 0 skips the round. Last round is forced.
struct AcceptanceProbStrategy {
    std::vector<double> eps;
    std::size_t rounds() const { return eps.size(); }
};

struct Solution {
    ThresholdStrategy strategy;
    double opt_value = 0.0;
};

/// Optimal thresholds via backward induction over continuation values.
/// thresholds[n-1] = 0 and thresholds[i-1] >= thresholds[i].
Solution backward_induction(const ProductDistribution& d);

/// Exact expected reward of running the strategy on d.
double evaluate_exact(const ThresholdStrategy& s, const ProductDistribution& d);

struct MonteCarloResult {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MonteCarloResult evaluate_monte_carlo(const ThresholdStrategy& s,
                                      const ProductDistribution& d,
                                      std::size_t trials, std::uint64_t seed);

/// Per-round additive error terms against the optimal continuation values
/// of d; all terms are >= 0 and they sum to Opt(d) - evaluate_exact(s, d).
std::vector<double> error_decomposition(const ThresholdStrategy& s,
                                        const ProductDistribution& d);

/// Empirically optimal thresholds: backward induction on the product
/// empirical distribution, optionally after downward discretization, with
/// thresholds rounded up to grid multiples.
ThresholdStrategy learn_perm(const SampleMatrix& samples,
                             std::optional<double> grid = std::nullopt);

/// Acceptance probabilities from the i.i.d. threshold ODE
/// y' = y(log y - 1) - (beta - 1), y(0) = 1; eps[i-1] = 1 - y(i/n)^{1/(n-1)},
/// zeroed below eps/n.
AcceptanceProbStrategy iid_quantile_strategy(std::size_t n, double eps,
                                             double beta = 1.0 / 0.745);

/// Exact expected reward of the quantile-threshold acceptance rule, with
/// round i quantiles taken in d's i-th marginal.
double run_quantile_strategy(const AcceptanceProbStrategy& s, const ProductDistribution& d);
/// i.i.d. variant: all rounds use the same marginal.
double run_quantile_strategy(const AcceptanceProbStrategy& s, const DiscreteDistribution& d,
                             std::size_t rounds);

struct DominatedEmpiricalStrategy {
    AcceptanceProbStrategy strategy;
    DiscreteDistribution shaded_empirical;  // reference distribution for quantiles
};

/// i.i.d. learner: pool all sample entries into one empirical distribution,
/// shade it, and pair it with the ODE acceptance probabilities.
DominatedEmpiricalStrategy dominated_empirical_strategy(const SampleMatrix& samples,
                                                        double eps, double delta);

/// Smallest support value accepted at acceptance probability eps_i, i.e.
/// min{v in support : quantile(v) <= eps_i}; +inf when nothing qualifies.
double value_threshold(const DiscreteDistribution& d, double eps_i);

}  // namespace prophet
}  // namespace perm
