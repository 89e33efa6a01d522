#include "perm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace perm {

namespace {

// aligned mass vectors of p and q over their support union
std::pair<std::vector<double>, std::vector<double>> aligned_masses(
    const DiscreteDistribution& p, const DiscreteDistribution& q) {
    std::set<double> values(p.support().begin(), p.support().end());
    values.insert(q.support().begin(), q.support().end());
    std::vector<double> fp, fq;
    fp.reserve(values.size());
    fq.reserve(values.size());
    auto mass = [](const DiscreteDistribution& d, double v) {
        auto it = std::lower_bound(d.support().begin(), d.support().end(), v);
        if (it == d.support().end() || *it != v) return 0.0;
        return d.probs()[static_cast<std::size_t>(it - d.support().begin())];
    };
    for (double v : values) {
        fp.push_back(mass(p, v));
        fq.push_back(mass(q, v));
    }
    return {std::move(fp), std::move(fq)};
}

}  // namespace

double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    auto [fp, fq] = aligned_masses(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < fp.size(); ++i) sum += std::abs(fp[i] - fq[i]);
    return 0.5 * sum;
}

double hellinger_sq(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    auto [fp, fq] = aligned_masses(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < fp.size(); ++i) {
        double d = std::sqrt(fp[i]) - std::sqrt(fq[i]);
        sum += d * d;
    }
    return 0.5 * sum;
}

double product_hellinger_sq(const ProductDistribution& p, const ProductDistribution& q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("dimension mismatch");
    double prod = 1.0;
    for (std::size_t i = 0; i < p.dimension(); ++i)
        prod *= 1.0 - hellinger_sq(p.marginal(i), q.marginal(i));
    return 1.0 - prod;
}

double total_variation_product_upper(const ProductDistribution& p,
                                     const ProductDistribution& q) {
    return std::sqrt(2.0) * std::sqrt(product_hellinger_sq(p, q));
}

std::size_t joint_support_size(const ProductDistribution& d) {
    std::size_t total = 1;
    for (const auto& m : d.marginals()) {
        if (total > kDefaultJointCap * 1000 / std::max<std::size_t>(m.size(), 1))
            return static_cast<std::size_t>(-1);
        total *= m.size();
    }
    return total;
}

double total_variation_joint(const ProductDistribution& p, const ProductDistribution& q,
                             std::size_t cap) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("dimension mismatch");
    std::size_t n = p.dimension();
    std::vector<std::vector<double>> fp(n), fq(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        auto [a, b] = aligned_masses(p.marginal(i), q.marginal(i));
        fp[i] = std::move(a);
        fq[i] = std::move(b);
        if (total > cap / fp[i].size() + 1) throw CapExceeded("joint support exceeds cap");
        total *= fp[i].size();
    }
    if (total > cap) throw CapExceeded("joint support exceeds cap");

    std::vector<std::size_t> idx(n, 0);
    double sum = 0.0;
    while (true) {
        double mp = 1.0, mq = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            mp *= fp[i][idx[i]];
            mq *= fq[i][idx[i]];
        }
        sum += std::abs(mp - mq);
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++idx[i] < fp[i].size()) break;
            idx[i] = 0;
        }
        if (i == n) break;
    }
    return 0.5 * sum;
}

}  // namespace perm
