#pragma once

#include "perm/discrete.hpp"

namespace perm {

/// Parameters of the quantile shading functions: sample count N,
/// dimension n, confidence delta in (0, 1).
struct ShadingParams {
    std::size_t N = 1;
    std::size_t n = 1;
    double delta = 0.5;

    /// ln(2 N n / delta).
    double log_term() const;
    void validate() const;
};

/// s(q) = max{0, q - sqrt(2 q (1-q) L / N) - 4 L / N},  L = ln(2Nn/delta).
double shade_quantile(double q, const ShadingParams& p);
/// d(q) = max{0, q - sqrt(8 q (1-q) L / N) - 7 L / N}.
double double_shade_quantile(double q, const ShadingParams& p);

/// Lower every positive support value's quantile through `shade_quantile`;
/// the removed mass lands on value 0. Output is dominated by the input.
DiscreteDistribution shade(const DiscreteDistribution& d, const ShadingParams& p);
DiscreteDistribution double_shade(const DiscreteDistribution& d, const ShadingParams& p);
ProductDistribution shade(const ProductDistribution& d, const ShadingParams& p);
ProductDistribution double_shade(const ProductDistribution& d, const ShadingParams& p);

/// Quantile-space truncation: the top `u` of quantile mass collapses down
/// onto the value at quantile rank u, the bottom `l` collapses up onto the
/// value at rank 1-l. Requires l + u < 1; identity when l = u = 0.
DiscreteDistribution truncate(const DiscreteDistribution& d, double l, double u);

/// CDF shifted down by the concentration deviation (= 1 at the top support
/// value); dominates the input deterministically.
DiscreteDistribution upper_auxiliary(const DiscreteDistribution& d, const ShadingParams& p);
/// CDF shifted up; dominated by the input deterministically.
DiscreteDistribution lower_auxiliary(const DiscreteDistribution& d, const ShadingParams& p);
ProductDistribution upper_auxiliary(const ProductDistribution& d, const ShadingParams& p);
ProductDistribution lower_auxiliary(const ProductDistribution& d, const ShadingParams& p);

}  // namespace perm
