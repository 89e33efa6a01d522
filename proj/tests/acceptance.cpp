// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria. Tolerances are fixed here and intentionally not shared
// with the unit tests.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "perm/harness.hpp"
#include "perm/metrics.hpp"
#include "perm/myerson.hpp"
#include "perm/pandora.hpp"
#include "perm/prophet.hpp"
#include "perm/rng.hpp"
#include "perm/shading.hpp"

using namespace perm;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

DiscreteDistribution grid5() {
    return DiscreteDistribution({0.0, 0.25, 0.5, 0.75, 1.0}, {0.2, 0.2, 0.2, 0.2, 0.2});
}

// 1. evaluators equal independent oracles
void criterion_exactness() {
    const double tol = 1e-12;
    double worst = 0.0;

    Rng rng = Rng::stream(101, {0});
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next_below(4);
        auto d = oracles::random_product(rng, n, 4);
        std::vector<double> th(n);
        for (auto& x : th) x = rng.next_double();
        if (trial % 2 == 0) th = prophet::backward_induction(d).strategy.thresholds;
        double lib = prophet::evaluate_exact(prophet::ThresholdStrategy{th}, d);
        worst = std::max(worst, std::abs(lib - oracles::threshold_strategy_value(th, d)));
    }
    bool prophet_ok = worst <= tol;

    double worst_pandora = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.next_below(4);
        auto rewards = oracles::random_product(rng, n, 3);
        std::vector<double> costs(n);
        for (auto& c : costs) c = 0.3 * rng.next_double();
        pandora::PandoraInstance inst{std::move(rewards), std::move(costs)};
        double w = pandora::evaluate_exact(pandora::weitzman_policy(inst), inst);
        worst_pandora = std::max(worst_pandora, std::abs(w - pandora::brute_force_optimal(inst)));
    }
    bool pandora_ok = worst_pandora <= tol;

    double worst_myerson = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        auto m = oracles::random_distribution(rng, 6);
        ProductDistribution single({m});
        double rev = myerson::expected_revenue(myerson::myerson_auction(single), single);
        worst_myerson = std::max(worst_myerson, std::abs(rev - oracles::posted_price_max(m)));
    }
    bool myerson_ok = worst_myerson <= tol;

    report(1, "evaluators match brute-force oracles", prophet_ok && pandora_ok && myerson_ok,
           "max gaps: prophet " + fmt(worst) + ", pandora " + fmt(worst_pandora) +
               ", myerson " + fmt(worst_myerson) + ", tol 1e-12");
}

// 2. metric inequalities and the product Hellinger identity
void criterion_metric_laws() {
    const double tol = 1e-12;
    Rng rng = Rng::stream(102, {0});
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto p = oracles::random_distribution(rng, 6);
        auto q = oracles::random_distribution(rng, 6);
        double tv = total_variation(p, q);
        double h2 = hellinger_sq(p, q);
        if (h2 > tv + tol || tv > std::sqrt(2.0 * h2) + tol) ++violations;
    }
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.next_below(4);
        auto p = oracles::random_product(rng, n, 4);
        auto q = oracles::random_product(rng, n, 4);
        worst = std::max(worst, std::abs(product_hellinger_sq(p, q) -
                                         oracles::joint_hellinger_sq(p, q)));
    }
    report(2, "metric laws H^2 <= TV <= sqrt(2) H and product identity",
           violations == 0 && worst <= tol,
           std::to_string(violations) + " violations / 10000 pairs, product gap " +
               fmt(worst) + ", tol 1e-12");
}

// 3. error decomposition sums exactly to Opt - Alg
void criterion_decomposition() {
    Rng rng = Rng::stream(103, {0});
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next_below(4);
        auto d = oracles::random_product(rng, n, 4);
        std::vector<double> th(n);
        for (auto& x : th) x = rng.next_double();
        prophet::ThresholdStrategy s{th};
        auto terms = prophet::error_decomposition(s, d);
        double sum = 0.0;
        for (double t : terms) sum += t;
        double target =
            prophet::backward_induction(d).opt_value - prophet::evaluate_exact(s, d);
        worst = std::max(worst, std::abs(sum - target));
    }
    report(3, "error decomposition identity", worst <= 1e-12,
           "max |sum - (opt - alg)| = " + fmt(worst) + ", tol 1e-12");
}

// 4. strong monotonicity for all three problems
void criterion_strong_monotonicity() {
    const double tol = 1e-9;
    Rng rng = Rng::stream(104, {0});
    int bad_prophet = 0, bad_pandora = 0, bad_myerson = 0;
    for (int trial = 0; trial < 500; ++trial) {
        auto d = oracles::random_product(rng, 1 + rng.next_below(4), 4);
        auto shrunk = oracles::dominated_version(rng, d);
        auto sol = prophet::backward_induction(shrunk);
        if (prophet::evaluate_exact(sol.strategy, d) < sol.opt_value - tol) ++bad_prophet;
    }
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.next_below(4);
        auto rewards = oracles::random_product(rng, n, 3);
        std::vector<double> costs(n);
        for (auto& c : costs) c = 0.3 * rng.next_double();
        pandora::PandoraInstance inst{rewards, costs};
        pandora::PandoraInstance shrunk{oracles::dominated_version(rng, rewards), costs};
        auto p = pandora::weitzman_policy(shrunk);
        if (pandora::evaluate_exact(p, inst) < pandora::evaluate_exact(p, shrunk) - tol)
            ++bad_pandora;
    }
    for (int trial = 0; trial < 500; ++trial) {
        auto d = oracles::random_product(rng, 1 + rng.next_below(3), 4);
        auto shrunk = oracles::dominated_version(rng, d);
        auto a = myerson::myerson_auction(shrunk);
        if (myerson::expected_revenue(a, d) < myerson::expected_revenue(a, shrunk) - tol)
            ++bad_myerson;
    }
    report(4, "strong monotonicity on 500 dominated pairs per problem",
           bad_prophet + bad_pandora + bad_myerson == 0,
           "violations beyond 1e-9: prophet " + std::to_string(bad_prophet) + ", pandora " +
               std::to_string(bad_pandora) + ", myerson " + std::to_string(bad_myerson));
}

// 5. auxiliary sandwich frequency
void criterion_sandwich() {
    ProductDistribution d({grid5(), grid5(), grid5()});
    const std::size_t N = 500;
    ShadingParams p{N, 3, 0.1};
    auto upper = upper_auxiliary(d, p);
    auto lower = lower_auxiliary(d, p);
    int hits = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        auto e = product_empirical(sample(d, N, 7000 + static_cast<std::uint64_t>(t)));
        if (dominates(upper, e) && dominates(e, lower)) ++hits;
    }
    report(5, "sandwich frequency at delta = 0.1, N = 500, n = 3",
           hits >= static_cast<int>(0.85 * trials),
           std::to_string(hits) + "/" + std::to_string(trials) + " trials, need >= 170");
}

// 6. PERM regret scaling for all three problems
void criterion_convergence() {
    using namespace harness;
    bool all_ok = true;
    std::string detail;
    // a fine value grid keeps the learned policies sensitive to estimation
    // error; coarse supports would snap the regret to zero at every N
    std::vector<double> support(101), probs(101, 1.0 / 101.0);
    for (std::size_t j = 0; j < support.size(); ++j)
        support[j] = static_cast<double>(j) / 100.0;
    DiscreteDistribution fine(std::move(support), std::move(probs));
    for (auto problem : {Problem::prophet, Problem::pandora, Problem::auction}) {
        ExperimentConfig cfg;
        cfg.problem = problem;
        cfg.instance = ProductDistribution({fine, fine});
        if (problem == Problem::pandora) cfg.costs = {0.1, 0.1};
        cfg.sample_grid = {100, 1000, 10000};
        cfg.trials = 20;
        cfg.seed = 606;
        auto medians = run_sweep(cfg).median_regrets();
        double slope = log_log_slope(medians);
        bool monotone = medians[0].second >= medians[1].second &&
                        medians[1].second >= medians[2].second;
        bool ok = monotone && slope <= -0.35 && medians[2].second <= 0.03;
        all_ok = all_ok && ok;
        detail += to_string(problem) + " slope " + fmt(slope) + " final " +
                  fmt(medians[2].second) + "; ";
    }
    report(6, "PERM median regret scaling (slope <= -0.35, final <= 0.03)", all_ok, detail);
}

// 7. finite lower-bound closed form on every small shape
void criterion_finite_lb() {
    using namespace harness;
    Rng rng = Rng::stream(107, {0});
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::size_t k = 1; k <= 3; ++k) {
            auto v = SignMatrix::all_plus(n, k);
            for (int rep = 0; rep < 5; ++rep) {
                auto w = v;
                for (auto& s : w.signs) s = rng.next_below(2) ? 1 : -1;
                auto inst = finite_lb_instance(n, k, 0.4, v);
                auto hv = finite_lb_instance(n, k, 0.4, w);
                double direct = 0.0;
                for (const auto& pt : oracles::enumerate_joint(inst.distribution))
                    direct += pt.p * (inst.hypothesis(pt.t) - hv.hypothesis(pt.t));
                worst = std::max(worst,
                                 std::abs(finite_lb_loss(n, k, 0.4, v, w) - direct));
            }
        }
    }
    report(7, "finite lower-bound loss equals enumeration (n <= 4, k <= 3)", worst <= 1e-12,
           "max gap " + fmt(worst) + ", tol 1e-12");
}

// 8. i.i.d. ODE strategy: shape of the solution and desk-scale guarantee
void criterion_iid_ode() {
    const std::size_t n = 50;
    auto s = prophet::iid_quantile_strategy(n, 0.01);

    // y(0) = 1 and y strictly decreasing => acceptance levels strictly grow
    bool shape_ok = s.eps.front() < 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (s.eps[i] > 0.0 && s.eps[i + 1] > 0.0 && s.eps[i + 1] <= s.eps[i])
            shape_ok = false;
    }

    // uniform grid rewards, 10^5 Monte Carlo runs of the quantile rule
    std::vector<double> support(n), probs(n, 1.0 / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        support[j] = static_cast<double>(j + 1) / static_cast<double>(n);
    DiscreteDistribution d(std::move(support), std::move(probs));

    double emax = 0.0;
    double prev_pow = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        double pw = std::pow(d.cdf(d.support()[j]), static_cast<double>(n));
        emax += d.support()[j] * (pw - prev_pow);
        prev_pow = pw;
    }

    const std::size_t trials = 100000;
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(108, {t});
        double reward = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = d.sample_value(rng.next_double());
            if (d.quantile(v) <= s.eps[i] || i + 1 == n) {
                reward = v;
                break;
            }
        }
        total += reward;
    }
    double mc = total / static_cast<double>(trials);
    report(8, "i.i.d. ODE strategy earns >= 0.70 E[max] on the n = 50 uniform grid",
           shape_ok && mc >= 0.70 * emax,
           "MC value " + fmt(mc) + " vs 0.70 * E[max] = " + fmt(0.70 * emax));
}

// 9. Pandora cost tail and truncation loss at eps = 0.05
void criterion_pandora_tail() {
    const double eps = 0.05;
    const std::size_t n = 60;
    std::vector<DiscreteDistribution> rewards(n, DiscreteDistribution({0.0, 1.0}, {0.2, 0.8}));
    pandora::PandoraInstance inst{ProductDistribution(std::move(rewards)),
                                  std::vector<double>(n, 0.7)};
    double budget = pandora::default_budget(eps, inst.costs);  // 8 ln(4/eps) < total cost
    auto policy = pandora::weitzman_policy(inst);
    double tail = pandora::cost_tail_frequency(policy, inst, budget, 100000, 9);
    double full = pandora::evaluate_exact(policy, inst);
    double trunc = pandora::evaluate_exact(pandora::truncated_policy(policy, budget), inst);
    report(9, "cost tail <= 0.05 and truncation loss <= 0.05 at eps = 0.05",
           tail <= eps && full - trunc <= 0.05,
           "tail frequency " + fmt(tail) + ", truncation loss " + fmt(full - trunc));
}

// 10. half-of-max prophet guarantee
void criterion_half_of_max() {
    Rng rng = Rng::stream(110, {0});
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 500; ++trial) {
        auto d = oracles::random_product(rng, 1 + rng.next_below(5), 4);
        double opt = prophet::backward_induction(d).opt_value;
        worst = std::min(worst, opt - 0.5 * oracles::expected_max(d));
    }
    // worst is the most negative slack seen; any value below -1e-12 fails
    bool ok = worst >= -1e-12;
    report(10, "backward induction earns at least half of E[max]", ok,
           "min slack " + fmt(worst));
}

}  // namespace

int main() {
    criterion_exactness();
    criterion_metric_laws();
    criterion_decomposition();
    criterion_strong_monotonicity();
    criterion_sandwich();
    criterion_convergence();
    criterion_finite_lb();
    criterion_iid_ode();
    criterion_pandora_tail();
    criterion_half_of_max();
    return failures;
}
