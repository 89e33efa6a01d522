#pragma once

#include "perm/discrete.hpp"

namespace perm {

/// Raised when an exact joint enumeration would exceed the configured cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultJointCap = 1'000'000;

/// Half the L1 distance between the two mass functions on the support union.
double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// H^2(P, Q) = 1/2 sum_t (sqrt p(t) - sqrt q(t))^2.
double hellinger_sq(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// Squared Hellinger distance of two product distributions via
/// 1 - H^2 = prod_i (1 - H^2_i); never enumerates the joint.
double product_hellinger_sq(const ProductDistribution& p, const ProductDistribution& q);

/// sqrt(2) * H(P, Q); an upper bound on the joint total variation.
double total_variation_product_upper(const ProductDistribution& p,
                                     const ProductDistribution& q);

/// Exact joint total variation by enumeration; throws CapExceeded if the
/// joint support of either product exceeds `cap` points.
double total_variation_joint(const ProductDistribution& p, const ProductDistribution& q,
                             std::size_t cap = kDefaultJointCap);

/// Number of points in the joint support.
std::size_t joint_support_size(const ProductDistribution& d);

}  // namespace perm
