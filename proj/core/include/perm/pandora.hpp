#pragma once

#include <cstdint>
#include <optional>

#include "perm/discrete.hpp"

namespace perm {
namespace pandora {

/// Boxes with rewards drawn from independent marginals and fixed opening
/// costs.
struct PandoraInstance {
    ProductDistribution rewards;
    std::vector<double> costs;

    PandoraInstance(ProductDistribution r, std::vector<double> c);
    std::size_t boxes() const { return costs.size(); }
};

/// Visit order plus reservation values aligned with the order. Before
/// opening the k-th box in order, stop and take the best observed reward
/// if it is >= sigmas[k]; optional budget halts once the cost paid would
/// exceed it.
struct PandoraPolicy {
    std::vector<std::size_t> order;
    std::vector<double> sigmas;  // aligned with order, non-increasing
    std::optional<double> budget;
};

/// sigma solving E[(t - sigma)^+] = c; exact on the piecewise-linear
/// exceedance curve. Negative when c exceeds E[t] (box not worth opening
/// on its own).
double reservation_value(const DiscreteDistribution& d, double c);

/// Boxes sorted by reservation value descending (ties by index ascending).
PandoraPolicy weitzman_policy(const PandoraInstance& inst);

/// Exact expected reward-minus-cost of following the policy on inst,
/// via DP over (position in order, best-so-far).
double evaluate_exact(const PandoraPolicy& p, const PandoraInstance& inst);

/// Optimal adaptive value by recursion over (unopened set, best-so-far);
/// requires boxes() <= 12 and a joint state space within reason.
double brute_force_optimal(const PandoraInstance& inst);

/// Same policy but halting once the cumulative cost paid would exceed the
/// budget.
PandoraPolicy truncated_policy(const PandoraPolicy& p, double budget);

/// Weitzman policy of the product empirical distribution; optional grid
/// discretization and optional cost budget.
PandoraPolicy learn_perm(const SampleMatrix& samples, const std::vector<double>& costs,
                         std::optional<double> grid = std::nullopt,
                         std::optional<double> budget = std::nullopt);

/// Cost budget 8 ln(4/eps) capped at the instance's total cost.
double default_budget(double eps, const std::vector<double>& costs);

/// Hard instance family: n boxes of cost 1/n; box i has reward 1 with
/// probability (1+eps)/n when signs[i] is set, (1-eps)/n otherwise.
PandoraInstance hard_instance(std::size_t n, double eps, const std::vector<bool>& signs);

/// Closed-form optimal value of a hard instance (open the favorable boxes
/// until a reward of 1 shows up).
double hard_instance_opt(std::size_t n, double eps, std::size_t n_plus);

/// Closed-form value of the worst ordering with k_plus favorable boxes
/// skipped and k_minus unfavorable boxes opened.
double hard_instance_policy_value(std::size_t n, double eps, std::size_t n_plus,
                                  std::size_t k_plus, std::size_t k_minus);

/// Monte Carlo frequency of the policy paying cost above `threshold`.
double cost_tail_frequency(const PandoraPolicy& p, const PandoraInstance& inst,
                           double threshold, std::size_t trials, std::uint64_t seed);

}  // namespace pandora
}  // namespace perm
