#include "perm/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "perm/rng.hpp"

namespace perm {

namespace {
constexpr double kNormTol = 1e-9;
constexpr double kDominanceTol = 1e-12;
}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> support,
                                           std::vector<double> probs) {
    if (support.size() != probs.size() || support.empty())
        throw std::invalid_argument("support/probs size mismatch or empty");
    std::vector<std::size_t> idx(support.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    support_.reserve(support.size());
    probs_.reserve(probs.size());
    for (std::size_t i : idx) {
        if (probs[i] < 0.0)
            throw std::invalid_argument("negative probability");
        if (!support_.empty() && support[i] == support_.back())
            throw std::invalid_argument("duplicate support value");
        support_.push_back(support[i]);
        probs_.push_back(probs[i]);
    }
    finalize();
}

DiscreteDistribution DiscreteDistribution::from_masses(
    std::vector<std::pair<double, double>> masses) {
    if (masses.empty()) throw std::invalid_argument("empty mass list");
    std::map<double, double> merged;
    for (auto& [v, m] : masses) {
        if (m < 0.0) throw std::invalid_argument("negative mass");
        merged[v] += m;
    }
    DiscreteDistribution d;
    for (auto& [v, m] : merged) {
        d.support_.push_back(v);
        d.probs_.push_back(m);
    }
    d.finalize();
    return d;
}

void DiscreteDistribution::finalize() {
    double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > kNormTol)
        throw std::invalid_argument("probabilities sum to " + std::to_string(total));
    // drop zero-mass points, renormalize to exactly 1
    std::vector<double> s, p;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (probs_[i] > 0.0) {
            s.push_back(support_[i]);
            p.push_back(probs_[i] / total);
        }
    }
    if (s.empty()) throw std::invalid_argument("all masses zero");
    support_ = std::move(s);
    probs_ = std::move(p);
    cum_.resize(probs_.size());
    suffix_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) cum_[i] = (acc += probs_[i]);
    acc = 0.0;
    for (std::size_t i = probs_.size(); i-- > 0;) suffix_[i] = (acc += probs_[i]);
    cum_.back() = 1.0;
    suffix_.front() = 1.0;
}

double DiscreteDistribution::cdf(double v) const {
    auto it = std::upper_bound(support_.begin(), support_.end(), v);
    if (it == support_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double DiscreteDistribution::quantile(double v) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), v);
    if (it == support_.end()) return 0.0;
    return suffix_[static_cast<std::size_t>(it - support_.begin())];
}

double DiscreteDistribution::expectation() const {
    double e = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) e += support_[i] * probs_[i];
    return e;
}

double DiscreteDistribution::exceedance(double s) const {
    double e = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i)
        if (support_[i] > s) e += (support_[i] - s) * probs_[i];
    return e;
}

double DiscreteDistribution::mean_above(double s) const {
    double e = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i)
        if (support_[i] >= s) e += support_[i] * probs_[i];
    return e;
}

double DiscreteDistribution::sample_value(double u) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    std::size_t j = (it == cum_.end()) ? cum_.size() - 1
                                       : static_cast<std::size_t>(it - cum_.begin());
    return support_[j];
}

ProductDistribution::ProductDistribution(std::vector<DiscreteDistribution> marginals)
    : marginals_(std::move(marginals)) {
    if (marginals_.empty()) throw std::invalid_argument("empty product distribution");
}

std::vector<double> SampleMatrix::column(std::size_t i) const {
    std::vector<double> col;
    col.reserve(data.size());
    for (const auto& row : data) col.push_back(row.at(i));
    return col;
}

DiscreteDistribution empirical(const std::vector<double>& column) {
    if (column.empty()) throw std::invalid_argument("empty sample column");
    std::vector<std::pair<double, double>> masses;
    masses.reserve(column.size());
    double w = 1.0 / static_cast<double>(column.size());
    for (double v : column) masses.emplace_back(v, w);
    return DiscreteDistribution::from_masses(std::move(masses));
}

ProductDistribution product_empirical(const SampleMatrix& samples) {
    if (samples.rows() == 0) throw std::invalid_argument("empty sample matrix");
    std::vector<DiscreteDistribution> marginals;
    marginals.reserve(samples.cols());
    for (std::size_t i = 0; i < samples.cols(); ++i)
        marginals.push_back(empirical(samples.column(i)));
    return ProductDistribution(std::move(marginals));
}

LabeledMixture conditional_product_empirical(const SampleMatrix& samples,
                                             const std::vector<int>& labels) {
    if (labels.size() != samples.rows())
        throw std::invalid_argument("labels length must equal sample count");
    std::map<int, std::vector<std::vector<double>>> by_label;
    for (std::size_t r = 0; r < samples.rows(); ++r)
        by_label[labels[r]].push_back(samples.data[r]);

    LabeledMixture out{empirical(std::vector<double>(labels.begin(), labels.end())), {}, {}};
    for (auto& [y, rows] : by_label) {
        SampleMatrix m{std::move(rows), samples.seed};
        out.labels.push_back(y);
        out.conditionals.push_back(product_empirical(m));
    }
    return out;
}

SampleMatrix sample(const ProductDistribution& d, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample count must be >= 1");
    SampleMatrix m;
    m.seed = seed;
    m.data.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        Rng rng = Rng::stream(seed, {j});
        auto& row = m.data[j];
        row.reserve(d.dimension());
        for (const auto& marginal : d.marginals())
            row.push_back(marginal.sample_value(rng.next_double()));
    }
    return m;
}

DiscreteDistribution discretize_down(const DiscreteDistribution& d, double grid) {
    if (grid <= 0.0) throw std::invalid_argument("grid must be positive");
    std::vector<std::pair<double, double>> masses;
    masses.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        double k = std::floor(d.support()[i] / grid + 1e-9);
        masses.emplace_back(k * grid, d.probs()[i]);
    }
    return DiscreteDistribution::from_masses(std::move(masses));
}

ProductDistribution discretize_down(const ProductDistribution& d, double grid) {
    std::vector<DiscreteDistribution> marginals;
    marginals.reserve(d.dimension());
    for (const auto& m : d.marginals()) marginals.push_back(discretize_down(m, grid));
    return ProductDistribution(std::move(marginals));
}

bool dominates(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    std::set<double> values(p.support().begin(), p.support().end());
    values.insert(q.support().begin(), q.support().end());
    for (double v : values)
        if (p.cdf(v) > q.cdf(v) + kDominanceTol) return false;
    return true;
}

bool dominates(const ProductDistribution& p, const ProductDistribution& q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < p.dimension(); ++i)
        if (!dominates(p.marginal(i), q.marginal(i))) return false;
    return true;
}

}  // namespace perm
