#pragma once

#include <cstdint>
#include <optional>

#include "perm/discrete.hpp"

namespace perm {
namespace myerson {

/// Revenue as a function of sale probability: one point per support value
/// used as a posted price, plus the concave upper envelope (ironing).
struct RevenueCurve {
    std::vector<std::pair<double, double>> points;    // (quantile, price * quantile)
    std::vector<std::pair<double, double>> envelope;  // concave hull vertices, from (0,0)
};

RevenueCurve revenue_curve(const DiscreteDistribution& d);

/// Ironed virtual value per support value: the envelope slope over the
/// value's quantile interval; non-decreasing in the value.
std::vector<double> ironed_virtual_values(const DiscreteDistribution& d);

/// Deterministic single-item auction: allocate to the highest nonnegative
/// ironed virtual value (ties to the lowest bidder index), charge the
/// critical bid.
class SingleItemAuction {
public:
    struct BidderTable {
        std::vector<double> values;  // design support, ascending
        std::vector<double> phi;     // ironed virtual values, non-decreasing
    };

    explicit SingleItemAuction(std::vector<BidderTable> tables);

    std::size_t bidders() const { return tables_.size(); }
    const BidderTable& table(std::size_t i) const { return tables_.at(i); }

    /// Ironed virtual value of a bid (bid rounded down to the design
    /// support; -inf below it).
    double virtual_value(std::size_t bidder, double bid) const;

    struct Outcome {
        std::optional<std::size_t> winner;
        double payment = 0.0;
    };

    /// Winner and critical payment for a full bid profile.
    Outcome run(const std::vector<double>& bids) const;

private:
    std::vector<BidderTable> tables_;
};

/// Myerson's optimal auction for the given product value distribution.
SingleItemAuction myerson_auction(const ProductDistribution& d);

/// Exact expected revenue by joint enumeration (throws CapExceeded beyond
/// `cap` joint points).
double expected_revenue(const SingleItemAuction& a, const ProductDistribution& d,
                        std::size_t cap = 1'000'000);

struct MonteCarloRevenue {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MonteCarloRevenue expected_revenue_monte_carlo(const SingleItemAuction& a,
                                               const ProductDistribution& d,
                                               std::size_t trials, std::uint64_t seed);

/// Empirical Myerson auction from samples, optionally discretized.
SingleItemAuction learn_perm(const SampleMatrix& samples,
                             std::optional<double> grid = std::nullopt);

}  // namespace myerson
}  // namespace perm
