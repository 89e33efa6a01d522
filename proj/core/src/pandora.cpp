#include "perm/pandora.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "perm/metrics.hpp"
#include "perm/rng.hpp"

namespace perm {
namespace pandora {

PandoraInstance::PandoraInstance(ProductDistribution r, std::vector<double> c)
    : rewards(std::move(r)), costs(std::move(c)) {
    if (rewards.dimension() != costs.size())
        throw std::invalid_argument("rewards/costs length mismatch");
    for (double ci : costs)
        if (ci < 0.0) throw std::invalid_argument("negative cost");
}

double reservation_value(const DiscreteDistribution& d, double c) {
    if (c < 0.0) throw std::invalid_argument("negative cost");
    if (c == 0.0) return d.max_support();
    const auto& v = d.support();
    // exceedance is piecewise linear and decreasing; scan segments top down
    double g_low = d.exceedance(v.front());
    if (c >= g_low) return d.expectation() - c;  // below min support, slope -1
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        double gj = d.exceedance(v[j]);
        double gj1 = d.exceedance(v[j + 1]);
        if (gj >= c && c > gj1) {
            double slope = d.quantile(v[j + 1]);  // Pr[t > v_j]
            return v[j] + (gj - c) / slope;
        }
    }
    return d.max_support();
}

PandoraPolicy weitzman_policy(const PandoraInstance& inst) {
    std::size_t n = inst.boxes();
    std::vector<double> sigma(n);
    for (std::size_t i = 0; i < n; ++i)
        sigma[i] = reservation_value(inst.rewards.marginal(i), inst.costs[i]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });
    std::vector<double> ordered(n);
    for (std::size_t k = 0; k < n; ++k) ordered[k] = sigma[order[k]];
    return {std::move(order), std::move(ordered), std::nullopt};
}

namespace {

std::vector<double> state_values(const PandoraInstance& inst) {
    std::vector<double> vals{0.0};
    for (const auto& m : inst.rewards.marginals())
        vals.insert(vals.end(), m.support().begin(), m.support().end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::size_t value_index(const std::vector<double>& vals, double v) {
    return static_cast<std::size_t>(
        std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
}

// number of boxes openable before the cumulative cost would exceed budget
std::size_t open_limit(const PandoraPolicy& p, const PandoraInstance& inst) {
    if (!p.budget) return p.order.size();
    double paid = 0.0;
    std::size_t k = 0;
    for (; k < p.order.size(); ++k) {
        paid += inst.costs[p.order[k]];
        if (paid > *p.budget + 1e-12) break;
    }
    return k;
}

}  // namespace

double evaluate_exact(const PandoraPolicy& p, const PandoraInstance& inst) {
    std::size_t n = inst.boxes();
    if (p.order.size() != n || p.sigmas.size() != n)
        throw std::invalid_argument("policy/instance dimension mismatch");

    std::vector<double> vals = state_values(inst);
    std::size_t m = vals.size();
    std::size_t kmax = open_limit(p, inst);

    // V[u] at position k; backward over positions
    std::vector<double> next(vals);  // position n: take best-so-far
    for (std::size_t k = n; k-- > 0;) {
        std::vector<double> cur(m);
        const auto& box = inst.rewards.marginal(p.order[k]);
        double cost = inst.costs[p.order[k]];
        for (std::size_t ui = 0; ui < m; ++ui) {
            if (k >= kmax || vals[ui] >= p.sigmas[k]) {
                cur[ui] = vals[ui];  // stop with best observed reward
                continue;
            }
            double ev = 0.0;
            for (std::size_t j = 0; j < box.size(); ++j) {
                std::size_t ti = value_index(vals, box.support()[j]);
                ev += box.probs()[j] * next[std::max(ui, ti)];
            }
            cur[ui] = ev - cost;
        }
        next = std::move(cur);
    }
    return next[0];  // start with best-so-far 0
}

double brute_force_optimal(const PandoraInstance& inst) {
    std::size_t n = inst.boxes();
    std::vector<double> vals = state_values(inst);
    std::size_t m = vals.size();
    if (n > 12 || (std::size_t(1) << n) * m > kDefaultJointCap)
        throw CapExceeded("instance too large for brute force");

    std::unordered_map<std::size_t, double> memo;
    auto rec = [&](auto&& self, std::size_t mask, std::size_t ui) -> double {
        std::size_t key = mask * m + ui;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        double best = vals[ui];  // stop
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t(1) << i)) continue;
            const auto& box = inst.rewards.marginal(i);
            double ev = -inst.costs[i];
            for (std::size_t j = 0; j < box.size(); ++j) {
                std::size_t ti = value_index(vals, box.support()[j]);
                ev += box.probs()[j] *
                      self(self, mask | (std::size_t(1) << i), std::max(ui, ti));
            }
            best = std::max(best, ev);
        }
        memo.emplace(key, best);
        return best;
    };
    return rec(rec, 0, 0);
}

PandoraPolicy truncated_policy(const PandoraPolicy& p, double budget) {
    if (budget <= 0.0) throw std::invalid_argument("budget must be positive");
    PandoraPolicy out = p;
    out.budget = budget;
    return out;
}

double default_budget(double eps, const std::vector<double>& costs) {
    double total = std::accumulate(costs.begin(), costs.end(), 0.0);
    return std::min(8.0 * std::log(4.0 / eps), total);
}

PandoraPolicy learn_perm(const SampleMatrix& samples, const std::vector<double>& costs,
                         std::optional<double> grid, std::optional<double> budget) {
    ProductDistribution e = product_empirical(samples);
    if (grid) e = discretize_down(e, *grid);
    PandoraPolicy p = weitzman_policy(PandoraInstance(std::move(e), costs));
    if (budget) p.budget = *budget;
    return p;
}

PandoraInstance hard_instance(std::size_t n, double eps, const std::vector<bool>& signs) {
    if (n < 1 || !(eps > 0.0 && eps < 1.0) || (1.0 + eps) / static_cast<double>(n) > 1.0)
        throw std::invalid_argument("invalid hard instance parameters");
    if (signs.size() != n) throw std::invalid_argument("signs length mismatch");
    std::vector<DiscreteDistribution> marginals;
    marginals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p1 = (signs[i] ? 1.0 + eps : 1.0 - eps) / static_cast<double>(n);
        marginals.push_back(DiscreteDistribution({0.0, 1.0}, {1.0 - p1, p1}));
    }
    return PandoraInstance(ProductDistribution(std::move(marginals)),
                           std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double hard_instance_opt(std::size_t n, double eps, std::size_t n_plus) {
    double a = 1.0 - (1.0 + eps) / static_cast<double>(n);
    double sum = 0.0, pw = 1.0;
    for (std::size_t i = 0; i < n_plus; ++i, pw *= a) sum += pw;
    return eps / static_cast<double>(n) * sum;
}

double hard_instance_policy_value(std::size_t n, double eps, std::size_t n_plus,
                                  std::size_t k_plus, std::size_t k_minus) {
    double a = 1.0 - (1.0 + eps) / static_cast<double>(n);
    double b = 1.0 - (1.0 - eps) / static_cast<double>(n);
    double sum_plus = 0.0, pw = 1.0;
    for (std::size_t i = 0; i + k_plus < n_plus; ++i, pw *= a) sum_plus += pw;
    double reach = pw;  // a^(n_plus - k_plus)
    double sum_minus = 0.0;
    pw = 1.0;
    for (std::size_t i = 0; i < k_minus; ++i, pw *= b) sum_minus += pw;
    return eps / static_cast<double>(n) * (sum_plus - reach * sum_minus);
}

double cost_tail_frequency(const PandoraPolicy& p, const PandoraInstance& inst,
                           double threshold, std::size_t trials, std::uint64_t seed) {
    std::size_t n = inst.boxes();
    std::size_t kmax = open_limit(p, inst);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, {0x636f7374ULL, t});
        double best = 0.0, paid = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k >= kmax || best >= p.sigmas[k]) break;
            paid += inst.costs[p.order[k]];
            best = std::max(best,
                            inst.rewards.marginal(p.order[k]).sample_value(rng.next_double()));
        }
        if (paid > threshold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace pandora
}  // namespace perm
