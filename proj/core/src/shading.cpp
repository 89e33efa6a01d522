#include "perm/shading.hpp"

#include <algorithm>
#include <cmath>

namespace perm {

double ShadingParams::log_term() const {
    return std::log(2.0 * static_cast<double>(N) * static_cast<double>(n) / delta);
}

void ShadingParams::validate() const {
    if (N < 1 || n < 1 || !(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("invalid shading parameters");
}

namespace {

double shaded(double q, double sqrt_coeff, double lin_coeff, const ShadingParams& p) {
    double L = p.log_term();
    double Nf = static_cast<double>(p.N);
    double v = q - std::sqrt(sqrt_coeff * q * (1.0 - q) * L / Nf) - lin_coeff * L / Nf;
    return std::max(0.0, v);
}

DiscreteDistribution apply_shade(const DiscreteDistribution& d, const ShadingParams& p,
                                 double (*fn)(double, const ShadingParams&)) {
    p.validate();
    if (d.min_support() < 0.0)
        throw std::invalid_argument("shading requires nonnegative support");

    const auto& vals = d.support();
    // shaded quantile per positive support value, forced non-increasing in v
    std::vector<double> sv, sq;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        if (vals[j] <= 0.0) continue;
        double s = fn(d.quantile(vals[j]), p);
        if (!sq.empty()) s = std::min(s, sq.back());
        sv.push_back(vals[j]);
        sq.push_back(s);
    }
    std::vector<std::pair<double, double>> masses;
    if (sv.empty()) {
        masses.emplace_back(d.min_support(), 1.0);  // point mass at 0 (or all-zero support)
        return DiscreteDistribution::from_masses(std::move(masses));
    }
    for (std::size_t j = 0; j < sv.size(); ++j) {
        double below = (j + 1 < sv.size()) ? sq[j + 1] : 0.0;
        masses.emplace_back(sv[j], sq[j] - below);
    }
    masses.emplace_back(0.0, 1.0 - sq.front());
    return DiscreteDistribution::from_masses(std::move(masses));
}

ProductDistribution map_marginals(const ProductDistribution& d,
                                  DiscreteDistribution (*fn)(const DiscreteDistribution&,
                                                             const ShadingParams&),
                                  const ShadingParams& p) {
    std::vector<DiscreteDistribution> out;
    out.reserve(d.dimension());
    for (const auto& m : d.marginals()) out.push_back(fn(m, p));
    return ProductDistribution(std::move(out));
}

}  // namespace

double shade_quantile(double q, const ShadingParams& p) { return shaded(q, 2.0, 4.0, p); }

double double_shade_quantile(double q, const ShadingParams& p) { return shaded(q, 8.0, 7.0, p); }

DiscreteDistribution shade(const DiscreteDistribution& d, const ShadingParams& p) {
    return apply_shade(d, p, shade_quantile);
}

DiscreteDistribution double_shade(const DiscreteDistribution& d, const ShadingParams& p) {
    return apply_shade(d, p, double_shade_quantile);
}

ProductDistribution shade(const ProductDistribution& d, const ShadingParams& p) {
    return map_marginals(d, shade, p);
}

ProductDistribution double_shade(const ProductDistribution& d, const ShadingParams& p) {
    return map_marginals(d, double_shade, p);
}

DiscreteDistribution truncate(const DiscreteDistribution& d, double l, double u) {
    if (l < 0.0 || u < 0.0 || l + u >= 1.0)
        throw std::invalid_argument("require l, u >= 0 and l + u < 1");
    const auto& vals = d.support();
    std::vector<double> q(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        double qj = d.quantile(vals[j]);
        q[j] = (qj <= u) ? 0.0 : (qj > 1.0 - l) ? 1.0 : qj;
    }
    std::vector<std::pair<double, double>> masses;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        double below = (j + 1 < vals.size()) ? q[j + 1] : 0.0;
        masses.emplace_back(vals[j], q[j] - below);
    }
    return DiscreteDistribution::from_masses(std::move(masses));
}

namespace {

// CDF deviation sqrt(2 F (1-F) L / N) + L / N of the concentration bound
double cdf_deviation(double F, const ShadingParams& p) {
    double L = p.log_term();
    double Nf = static_cast<double>(p.N);
    return std::sqrt(2.0 * F * (1.0 - F) * L / Nf) + L / Nf;
}

}  // namespace

DiscreteDistribution upper_auxiliary(const DiscreteDistribution& d, const ShadingParams& p) {
    p.validate();
    const auto& vals = d.support();
    std::vector<double> F(vals.size());
    double prev = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        double f = d.cdf(vals[j]);
        double g = (j + 1 == vals.size()) ? 1.0 : std::max(0.0, f - cdf_deviation(f, p));
        prev = std::max(prev, g);
        F[j] = prev;
    }
    std::vector<std::pair<double, double>> masses;
    for (std::size_t j = 0; j < vals.size(); ++j)
        masses.emplace_back(vals[j], F[j] - (j ? F[j - 1] : 0.0));
    return DiscreteDistribution::from_masses(std::move(masses));
}

DiscreteDistribution lower_auxiliary(const DiscreteDistribution& d, const ShadingParams& p) {
    p.validate();
    const auto& vals = d.support();
    std::vector<double> F(vals.size());
    double prev = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        double f = d.cdf(vals[j]);
        double g = std::min(1.0, f + cdf_deviation(f, p));
        prev = std::max(prev, g);
        F[j] = prev;
    }
    F.back() = 1.0;
    std::vector<std::pair<double, double>> masses;
    for (std::size_t j = 0; j < vals.size(); ++j)
        masses.emplace_back(vals[j], F[j] - (j ? F[j - 1] : 0.0));
    return DiscreteDistribution::from_masses(std::move(masses));
}

ProductDistribution upper_auxiliary(const ProductDistribution& d, const ShadingParams& p) {
    return map_marginals(d, upper_auxiliary, p);
}

ProductDistribution lower_auxiliary(const ProductDistribution& d, const ShadingParams& p) {
    return map_marginals(d, lower_auxiliary, p);
}

}  // namespace perm
