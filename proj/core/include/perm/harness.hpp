#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "perm/discrete.hpp"
#include "perm/pandora.hpp"

namespace perm {
namespace harness {

enum class Problem { prophet, pandora, auction };

Problem problem_from_string(const std::string& s);
std::string to_string(Problem p);

/// One sample-complexity sweep: for each (N, trial) draw samples, learn,
/// and measure exact regret against the problem's optimal value.
struct ExperimentConfig {
    Problem problem = Problem::prophet;
    ProductDistribution instance;
    std::vector<double> costs;  // pandora only
    std::vector<std::size_t> sample_grid;
    std::size_t trials = 1;
    double eps = 0.05;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::optional<double> grid;  // value discretization for the learner
};

struct SweepRow {
    std::size_t n = 0, k = 0, N = 0, trial = 0;
    double opt = 0.0, alg = 0.0, regret = 0.0;
};

struct SweepResult {
    Problem problem;
    std::uint64_t seed;
    std::vector<SweepRow> rows;

    /// Median regret per sample count, in sample_grid order.
    std::vector<std::pair<std::size_t, double>> median_regrets() const;
};

SweepResult run_sweep(const ExperimentConfig& cfg);

/// CSV with header problem,n,k,N,trial,seed,opt,alg,regret and floats
/// printed with 12 significant digits; byte-stable under a fixed seed.
void write_csv(const SweepResult& result, std::ostream& os);

/// Least-squares slope of log(median regret) against log(N).
double log_log_slope(const std::vector<std::pair<std::size_t, double>>& medians);

// -- finite-domain lower-bound family ----------------------------------------

/// Sign matrix in {-1, +1}^{n x k} indexing a hard instance and its
/// optimal hypothesis.
struct SignMatrix {
    std::size_t n = 0, k = 0;
    std::vector<int> signs;  // row-major, values +-1

    int at(std::size_t i, std::size_t j) const { return signs[i * k + j]; }
    static SignMatrix all_plus(std::size_t n, std::size_t k);
};

std::size_t hamming(const SignMatrix& a, const SignMatrix& b);

/// Product distribution on {-k..k} per coordinate: mass 1 - 1/n at 0 and
/// (1 -+ eps)/(2nk) on the signed spikes.
struct FiniteLBInstance {
    std::size_t n = 0, k = 0;
    double eps = 0.0;
    SignMatrix signs;
    ProductDistribution distribution;

    /// Indicator hypothesis: 1 on one-hot vectors matching the signs.
    double hypothesis(const std::vector<double>& t) const;
};

FiniteLBInstance finite_lb_instance(std::size_t n, std::size_t k, double eps,
                                    const SignMatrix& v);

/// Closed-form loss (1 - 1/n)^{n-1} * hamming(v, v') * eps / (nk); equals
/// the exact expectation gap of the two hypotheses under D^v.
double finite_lb_loss(std::size_t n, std::size_t k, double eps, const SignMatrix& v,
                      const SignMatrix& v_prime);

/// Exact expected value of hypothesis h^{v'} under D^{v}.
double finite_lb_hypothesis_value(const FiniteLBInstance& inst, const SignMatrix& v_prime);

// -- hypothesis gap ----------------------------------------------------------

/// Exact sup over [0,1]-valued hypotheses of |h(D) - h(E)|, i.e. the joint
/// total variation (enumerable joints only).
double sup_hypothesis_gap_exact(const ProductDistribution& d, const ProductDistribution& e,
                                std::size_t cap = 1'000'000);

/// Max gap over `trials` random [0,1]-valued hypothesis tables; a lower
/// bound on the exact sup.
double sup_hypothesis_gap_sampled(const ProductDistribution& d, const ProductDistribution& e,
                                  std::size_t trials, std::uint64_t seed,
                                  std::size_t cap = 1'000'000);

// -- classification extension ------------------------------------------------

struct ClassificationGapReport {
    double label_tv = 0.0;          // delta(D_Y, E_Y)
    double decomposition_bound = 0.0;  // label_tv + sum_y f_E(y) delta(D_X|y, E_X|y)
    double joint_tv = 0.0;          // exact TV of the joint feature-label laws
};

/// Compare a labeled mixture against the generalized product empirical of
/// labeled samples; the decomposition bound always dominates the joint TV.
ClassificationGapReport classification_perm_check(const LabeledMixture& truth,
                                                  const SampleMatrix& samples,
                                                  const std::vector<int>& labels,
                                                  std::size_t cap = 1'000'000);

}  // namespace harness
}  // namespace perm
