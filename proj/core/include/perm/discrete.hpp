#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace perm {

/// Finite-support one-dimensional probability mass function.
///
/// Support is strictly increasing with no duplicates; probabilities are
/// normalized at construction to sum to exactly 1 in working precision.
/// Zero-mass support points are dropped.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<double> support, std::vector<double> probs);

    /// Build from (value, mass) pairs; values are sorted and exact
    /// collisions merged.
    static DiscreteDistribution from_masses(std::vector<std::pair<double, double>> masses);

    static DiscreteDistribution point_mass(double v) { return {{v}, {1.0}}; }

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }

    double min_support() const { return support_.front(); }
    double max_support() const { return support_.back(); }

    /// Pr[t <= v].
    double cdf(double v) const;
    /// Pr[t >= v]  (mass at v included).
    double quantile(double v) const;

    double expectation() const;
    /// E[(t - s)^+].
    double exceedance(double s) const;
    /// E[t * 1{t >= s}].
    double mean_above(double s) const;
    /// Pr[t >= s].
    double prob_at_least(double s) const { return quantile(s); }

    /// Inverse-CDF draw from u in [0, 1).
    double sample_value(double u) const;

private:
    DiscreteDistribution() = default;
    void finalize();

    std::vector<double> support_;
    std::vector<double> probs_;
    std::vector<double> cum_;     // prefix sums of probs_
    std::vector<double> suffix_;  // suffix sums of probs_
};

/// Ordered vector of independent marginals.
class ProductDistribution {
public:
    ProductDistribution() = default;
    explicit ProductDistribution(std::vector<DiscreteDistribution> marginals);

    const std::vector<DiscreteDistribution>& marginals() const { return marginals_; }
    const DiscreteDistribution& marginal(std::size_t i) const { return marginals_.at(i); }
    std::size_t dimension() const { return marginals_.size(); }

private:
    std::vector<DiscreteDistribution> marginals_;
};

/// N x n matrix of i.i.d. sample vectors plus RNG provenance.
struct SampleMatrix {
    std::vector<std::vector<double>> data;  // N rows, n columns
    std::uint64_t seed = 0;
    std::size_t rows() const { return data.size(); }
    std::size_t cols() const { return data.empty() ? 0 : data.front().size(); }
    std::vector<double> column(std::size_t i) const;
};

/// Labeled mixture: label distribution plus one conditional product
/// distribution per observed label value.
struct LabeledMixture {
    DiscreteDistribution label_dist;
    std::vector<int> labels;  // aligned with conditionals
    std::vector<ProductDistribution> conditionals;
};

// -- construction from samples ------------------------------------------------

DiscreteDistribution empirical(const std::vector<double>& column);
ProductDistribution product_empirical(const SampleMatrix& samples);
LabeledMixture conditional_product_empirical(const SampleMatrix& samples,
                                             const std::vector<int>& labels);

// -- sampling -----------------------------------------------------------------

SampleMatrix sample(const ProductDistribution& d, std::size_t count, std::uint64_t seed);

// -- transforms ---------------------------------------------------------------

/// Round every support value down to a multiple of `grid`; merge collisions.
DiscreteDistribution discretize_down(const DiscreteDistribution& d, double grid);
ProductDistribution discretize_down(const ProductDistribution& d, double grid);

// -- stochastic dominance -----------------------------------------------------

/// True iff cdf_p(v) <= cdf_q(v) + 1e-12 on the union of supports.
bool dominates(const DiscreteDistribution& p, const DiscreteDistribution& q);
/// Coordinate-wise dominance of equal-dimension products.
bool dominates(const ProductDistribution& p, const ProductDistribution& q);

}  // namespace perm
