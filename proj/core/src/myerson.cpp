#include "perm/myerson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perm/metrics.hpp"
#include "perm/rng.hpp"

namespace perm {
namespace myerson {

RevenueCurve revenue_curve(const DiscreteDistribution& d) {
    if (d.min_support() < 0.0)
        throw std::invalid_argument("revenue curve requires nonnegative values");
    RevenueCurve rc;
    const auto& v = d.support();
    // ascending quantile order: highest price first
    rc.points.reserve(v.size());
    for (std::size_t j = v.size(); j-- > 0;) {
        double q = d.quantile(v[j]);
        rc.points.emplace_back(q, v[j] * q);
    }

    // concave upper envelope from (0, 0) by monotone chain
    std::vector<std::pair<double, double>> hull{{0.0, 0.0}};
    auto cross = [](const std::pair<double, double>& a, const std::pair<double, double>& b,
                    const std::pair<double, double>& c) {
        return (b.first - a.first) * (c.second - a.second) -
               (b.second - a.second) * (c.first - a.first);
    };
    for (const auto& pt : rc.points) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) >= 0.0)
            hull.pop_back();
        hull.push_back(pt);
    }
    rc.envelope = std::move(hull);
    return rc;
}

namespace {

double envelope_slope_at(const std::vector<std::pair<double, double>>& hull, double q) {
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        if (q <= hull[s + 1].first || s + 2 == hull.size()) {
            return (hull[s + 1].second - hull[s].second) /
                   (hull[s + 1].first - hull[s].first);
        }
    }
    return 0.0;  // single-vertex hull cannot happen: (0,0) plus >= 1 point
}

}  // namespace

std::vector<double> ironed_virtual_values(const DiscreteDistribution& d) {
    RevenueCurve rc = revenue_curve(d);
    const auto& v = d.support();
    std::vector<double> phi(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        double q_hi = d.quantile(v[j]);
        double q_lo = (j + 1 < v.size()) ? d.quantile(v[j + 1]) : 0.0;
        phi[j] = envelope_slope_at(rc.envelope, 0.5 * (q_lo + q_hi));
    }
    return phi;
}

SingleItemAuction::SingleItemAuction(std::vector<BidderTable> tables)
    : tables_(std::move(tables)) {
    if (tables_.empty()) throw std::invalid_argument("no bidders");
}

double SingleItemAuction::virtual_value(std::size_t bidder, double bid) const {
    const auto& t = tables_.at(bidder);
    auto it = std::upper_bound(t.values.begin(), t.values.end(), bid);
    if (it == t.values.begin()) return -std::numeric_limits<double>::infinity();
    return t.phi[static_cast<std::size_t>(it - t.values.begin()) - 1];
}

SingleItemAuction::Outcome SingleItemAuction::run(const std::vector<double>& bids) const {
    if (bids.size() != tables_.size())
        throw std::invalid_argument("bid profile dimension mismatch");
    std::vector<double> vv(bids.size());
    std::optional<std::size_t> winner;
    for (std::size_t i = 0; i < bids.size(); ++i) {
        vv[i] = virtual_value(i, bids[i]);
        if (vv[i] >= 0.0 && (!winner || vv[i] > vv[*winner])) winner = i;
    }
    if (!winner) return {};

    // critical bid: lowest design value at which the winner still wins
    std::size_t w = *winner;
    const auto& t = tables_[w];
    for (std::size_t j = 0; j < t.values.size(); ++j) {
        double p = t.phi[j];
        if (p < 0.0) continue;
        bool wins = true;
        for (std::size_t i = 0; i < bids.size() && wins; ++i) {
            if (i == w) continue;
            wins = (i < w) ? (p > vv[i]) : (p >= vv[i]);
        }
        if (wins) return {w, t.values[j]};
    }
    return {w, t.values.back()};  // unreachable for consistent tables
}

SingleItemAuction myerson_auction(const ProductDistribution& d) {
    std::vector<SingleItemAuction::BidderTable> tables;
    tables.reserve(d.dimension());
    for (const auto& m : d.marginals())
        tables.push_back({m.support(), ironed_virtual_values(m)});
    return SingleItemAuction(std::move(tables));
}

double expected_revenue(const SingleItemAuction& a, const ProductDistribution& d,
                        std::size_t cap) {
    if (a.bidders() != d.dimension())
        throw std::invalid_argument("auction/distribution dimension mismatch");
    std::size_t n = d.dimension();
    std::size_t total = 1;
    for (const auto& m : d.marginals()) {
        if (total > cap / m.size() + 1) throw CapExceeded("joint support exceeds cap");
        total *= m.size();
    }
    if (total > cap) throw CapExceeded("joint support exceeds cap");

    std::vector<std::size_t> idx(n, 0);
    std::vector<double> bids(n);
    double revenue = 0.0;
    while (true) {
        double prob = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            bids[i] = d.marginal(i).support()[idx[i]];
            prob *= d.marginal(i).probs()[idx[i]];
        }
        auto out = a.run(bids);
        if (out.winner) revenue += prob * out.payment;
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++idx[i] < d.marginal(i).size()) break;
            idx[i] = 0;
        }
        if (i == n) break;
    }
    return revenue;
}

MonteCarloRevenue expected_revenue_monte_carlo(const SingleItemAuction& a,
                                               const ProductDistribution& d,
                                               std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    std::size_t n = d.dimension();
    std::vector<double> bids(n);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, {0x6d796572ULL, t});
        for (std::size_t i = 0; i < n; ++i)
            bids[i] = d.marginal(i).sample_value(rng.next_double());
        auto out = a.run(bids);
        double r = out.winner ? out.payment : 0.0;
        sum += r;
        sumsq += r * r;
    }
    double mean = sum / static_cast<double>(trials);
    double var = std::max(0.0, sumsq / static_cast<double>(trials) - mean * mean);
    double se = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
    return {mean, se};
}

SingleItemAuction learn_perm(const SampleMatrix& samples, std::optional<double> grid) {
    ProductDistribution e = product_empirical(samples);
    if (grid) e = discretize_down(e, *grid);
    return myerson_auction(e);
}

}  // namespace myerson
}  // namespace perm
