#include "perm/prophet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perm/rng.hpp"

namespace perm {
namespace prophet {

Solution backward_induction(const ProductDistribution& d) {
    std::size_t n = d.dimension();
    std::vector<double> theta(n);
    theta[n - 1] = 0.0;
    double opt = d.marginal(n - 1).expectation();
    for (std::size_t i = n - 1; i-- > 0;) {
        theta[i] = opt;
        const auto& m = d.marginal(i);
        opt = m.mean_above(theta[i]) + (1.0 - m.prob_at_least(theta[i])) * opt;
    }
    return {ThresholdStrategy{std::move(theta)}, opt};
}

double evaluate_exact(const ThresholdStrategy& s, const ProductDistribution& d) {
    if (s.rounds() != d.dimension())
        throw std::invalid_argument("strategy length mismatch");
    std::size_t n = d.dimension();
    double reach = 1.0, total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& m = d.marginal(i);
        total += reach * m.mean_above(s.thresholds[i]);
        reach *= 1.0 - m.prob_at_least(s.thresholds[i]);
    }
    total += reach * d.marginal(n - 1).expectation();  // forced last round
    return total;
}

MonteCarloResult evaluate_monte_carlo(const ThresholdStrategy& s,
                                      const ProductDistribution& d,
                                      std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    std::size_t n = d.dimension();
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, {0x70726f70ULL, t});
        double reward = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = d.marginal(i).sample_value(rng.next_double());
            if (v >= s.thresholds[i] || i + 1 == n) {
                reward = v;
                break;
            }
        }
        sum += reward;
        sumsq += reward * reward;
    }
    double mean = sum / static_cast<double>(trials);
    double var = std::max(0.0, sumsq / static_cast<double>(trials) - mean * mean);
    double se = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
    return {mean, se};
}

std::vector<double> error_decomposition(const ThresholdStrategy& s,
                                        const ProductDistribution& d) {
    if (s.rounds() != d.dimension())
        throw std::invalid_argument("strategy length mismatch");
    std::size_t n = d.dimension();

    // optimal continuation values theta*_i = Opt(D_{>= i+1}), theta*_{n-1} = 0
    std::vector<double> opt_theta(n);
    opt_theta[n - 1] = 0.0;
    double opt = d.marginal(n - 1).expectation();
    for (std::size_t i = n - 1; i-- > 0;) {
        opt_theta[i] = opt;
        const auto& m = d.marginal(i);
        opt = m.mean_above(opt_theta[i]) + (1.0 - m.prob_at_least(opt_theta[i])) * opt;
    }

    std::vector<double> terms(n);
    double reach = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = d.marginal(i);
        double th = opt_theta[i];
        // E[(t - th)^+ - (t - th) * Stop_i(t)]
        double stop_part;
        if (i + 1 == n) {
            stop_part = m.expectation() - th;  // always stop
        } else {
            stop_part = m.mean_above(s.thresholds[i]) - th * m.prob_at_least(s.thresholds[i]);
        }
        terms[i] = reach * (m.exceedance(th) - stop_part);
        if (i + 1 < n) reach *= 1.0 - m.prob_at_least(s.thresholds[i]);
    }
    return terms;
}

ThresholdStrategy learn_perm(const SampleMatrix& samples, std::optional<double> grid) {
    ProductDistribution e = product_empirical(samples);
    if (grid) e = discretize_down(e, *grid);
    ThresholdStrategy s = backward_induction(e).strategy;
    if (grid) {
        for (double& th : s.thresholds)
            th = std::ceil(th / *grid - 1e-9) * *grid;  // rounding up keeps behavior on e
    }
    return s;
}

AcceptanceProbStrategy iid_quantile_strategy(std::size_t n, double eps, double beta) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("need 0 < eps < 1");

    auto deriv = [beta](double y) {
        double yc = std::max(y, 1e-12);
        return yc * (std::log(yc) - 1.0) - (beta - 1.0);
    };

    // classical RK4, fixed step 1e-4, landing exactly on each i/n
    const double h0 = 1e-4;
    std::vector<double> eps_out(n);
    double x = 0.0, y = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        double target = static_cast<double>(i) / static_cast<double>(n);
        while (x < target - 1e-15) {
            double h = std::min(h0, target - x);
            double k1 = deriv(y);
            double k2 = deriv(y + 0.5 * h * k1);
            double k3 = deriv(y + 0.5 * h * k2);
            double k4 = deriv(y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            y = std::max(y, 0.0);
            x += h;
        }
        double e = 1.0 - std::pow(std::max(y, 1e-12), 1.0 / static_cast<double>(n - 1));
        e = std::clamp(e, 0.0, 1.0);
        eps_out[i - 1] = (e < eps / static_cast<double>(n)) ? 0.0 : e;
    }
    return {std::move(eps_out)};
}

namespace {

double run_quantile_impl(const AcceptanceProbStrategy& s,
                         const std::vector<const DiscreteDistribution*>& rounds) {
    std::size_t n = rounds.size();
    double reach = 1.0, total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& m = *rounds[i];
        double accept_prob = 0.0, accept_mean = 0.0;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m.quantile(m.support()[j]) <= s.eps[i]) {
                accept_prob += m.probs()[j];
                accept_mean += m.probs()[j] * m.support()[j];
            }
        }
        total += reach * accept_mean;
        reach *= 1.0 - accept_prob;
    }
    total += reach * rounds[n - 1]->expectation();
    return total;
}

}  // namespace

double run_quantile_strategy(const AcceptanceProbStrategy& s, const ProductDistribution& d) {
    if (s.rounds() != d.dimension())
        throw std::invalid_argument("strategy length mismatch");
    std::vector<const DiscreteDistribution*> rounds;
    rounds.reserve(d.dimension());
    for (const auto& m : d.marginals()) rounds.push_back(&m);
    return run_quantile_impl(s, rounds);
}

double run_quantile_strategy(const AcceptanceProbStrategy& s, const DiscreteDistribution& d,
                             std::size_t rounds) {
    if (s.rounds() != rounds) throw std::invalid_argument("strategy length mismatch");
    std::vector<const DiscreteDistribution*> r(rounds, &d);
    return run_quantile_impl(s, r);
}

DominatedEmpiricalStrategy dominated_empirical_strategy(const SampleMatrix& samples,
                                                        double eps, double delta) {
    std::vector<double> pooled;
    pooled.reserve(samples.rows() * samples.cols());
    for (const auto& row : samples.data) pooled.insert(pooled.end(), row.begin(), row.end());
    DiscreteDistribution e = empirical(pooled);
    ShadingParams p{samples.rows(), samples.cols(), delta};
    return {iid_quantile_strategy(samples.cols(), eps), shade(e, p)};
}

double value_threshold(const DiscreteDistribution& d, double eps_i) {
    for (double v : d.support())
        if (d.quantile(v) <= eps_i) return v;
    return std::numeric_limits<double>::infinity();
}

}  // namespace prophet
}  // namespace perm
