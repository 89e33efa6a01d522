#include "perm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "perm/metrics.hpp"
#include "perm/myerson.hpp"
#include "perm/prophet.hpp"
#include "perm/rng.hpp"

namespace perm {
namespace harness {

Problem problem_from_string(const std::string& s) {
    if (s == "prophet") return Problem::prophet;
    if (s == "pandora") return Problem::pandora;
    if (s == "auction") return Problem::auction;
    throw std::invalid_argument("unknown problem: " + s);
}

std::string to_string(Problem p) {
    switch (p) {
        case Problem::prophet: return "prophet";
        case Problem::pandora: return "pandora";
        case Problem::auction: return "auction";
    }
    return "?";
}

namespace {

std::size_t thread_count() {
    if (const char* env = std::getenv("PERM_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    return 1;
}

// run fn(i) for i in [0, count), partitioned across threads; results are
// gathered by index so ordering never depends on scheduling
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::min(thread_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

std::size_t max_support_size(const ProductDistribution& d) {
    std::size_t k = 0;
    for (const auto& m : d.marginals()) k = std::max(k, m.size());
    return k;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!std::is_sorted(cfg.sample_grid.begin(), cfg.sample_grid.end()))
        throw std::invalid_argument("sample grid must be ascending");

    std::size_t n = cfg.instance.dimension();
    std::size_t k = max_support_size(cfg.instance);

    double opt = 0.0;
    std::optional<pandora::PandoraInstance> pinst;
    switch (cfg.problem) {
        case Problem::prophet:
            opt = prophet::backward_induction(cfg.instance).opt_value;
            break;
        case Problem::pandora:
            pinst.emplace(cfg.instance, cfg.costs);
            opt = pandora::evaluate_exact(pandora::weitzman_policy(*pinst), *pinst);
            break;
        case Problem::auction:
            opt = myerson::expected_revenue(myerson::myerson_auction(cfg.instance),
                                            cfg.instance);
            break;
    }

    std::vector<SweepRow> rows(cfg.sample_grid.size() * cfg.trials);
    parallel_for(rows.size(), [&](std::size_t cell) {
        std::size_t gi = cell / cfg.trials;
        std::size_t trial = cell % cfg.trials;
        std::size_t N = cfg.sample_grid[gi];
        std::uint64_t cell_seed = Rng::stream(cfg.seed, {0x73776565ULL, N, trial}).next_u64();
        SampleMatrix samples = sample(cfg.instance, N, cell_seed);

        double alg = 0.0;
        switch (cfg.problem) {
            case Problem::prophet: {
                auto s = prophet::learn_perm(samples, cfg.grid);
                alg = prophet::evaluate_exact(s, cfg.instance);
                break;
            }
            case Problem::pandora: {
                auto p = pandora::learn_perm(samples, cfg.costs, cfg.grid);
                alg = pandora::evaluate_exact(p, *pinst);
                break;
            }
            case Problem::auction: {
                auto a = myerson::learn_perm(samples, cfg.grid);
                alg = myerson::expected_revenue(a, cfg.instance);
                break;
            }
        }
        rows[cell] = {n, k, N, trial, opt, alg, opt - alg};
    });
    return {cfg.problem, cfg.seed, std::move(rows)};
}

std::vector<std::pair<std::size_t, double>> SweepResult::median_regrets() const {
    std::map<std::size_t, std::vector<double>> by_n;
    for (const auto& r : rows) by_n[r.N].push_back(r.regret);
    std::vector<std::pair<std::size_t, double>> out;
    for (auto& [N, v] : by_n) {
        std::sort(v.begin(), v.end());
        double med = (v.size() % 2) ? v[v.size() / 2]
                                    : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
        out.emplace_back(N, med);
    }
    return out;
}

void write_csv(const SweepResult& result, std::ostream& os) {
    os << "problem,n,k,N,trial,seed,opt,alg,regret\n";
    char buf[160];
    for (const auto& r : result.rows) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%zu,%zu,%llu,%.12g,%.12g,%.12g\n",
                      to_string(result.problem).c_str(), r.n, r.k, r.N, r.trial,
                      static_cast<unsigned long long>(result.seed), r.opt, r.alg, r.regret);
        os << buf;
    }
}

double log_log_slope(const std::vector<std::pair<std::size_t, double>>& medians) {
    if (medians.size() < 2) throw std::invalid_argument("need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double count = static_cast<double>(medians.size());
    for (const auto& [N, r] : medians) {
        double x = std::log(static_cast<double>(N));
        double y = std::log(std::max(r, 1e-12));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

// -- finite-domain lower bound -----------------------------------------------

SignMatrix SignMatrix::all_plus(std::size_t n, std::size_t k) {
    return {n, k, std::vector<int>(n * k, 1)};
}

std::size_t hamming(const SignMatrix& a, const SignMatrix& b) {
    if (a.n != b.n || a.k != b.k) throw std::invalid_argument("sign matrix shape mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.signs.size(); ++i) d += a.signs[i] != b.signs[i];
    return d;
}

FiniteLBInstance finite_lb_instance(std::size_t n, std::size_t k, double eps,
                                    const SignMatrix& v) {
    if (n < 2 || k < 1 || !(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("invalid finite lower-bound parameters");
    if (v.n != n || v.k != k || v.signs.size() != n * k)
        throw std::invalid_argument("sign matrix shape mismatch");
    for (int s : v.signs)
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +-1");

    double nf = static_cast<double>(n), kf = static_cast<double>(k);
    std::vector<DiscreteDistribution> marginals;
    marginals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, double>> masses;
        masses.emplace_back(0.0, 1.0 - 1.0 / nf);
        for (std::size_t j = 1; j <= k; ++j) {
            double plus = (v.at(i, j - 1) == 1 ? 1.0 + eps : 1.0 - eps) / (2.0 * nf * kf);
            double minus = (v.at(i, j - 1) == 1 ? 1.0 - eps : 1.0 + eps) / (2.0 * nf * kf);
            masses.emplace_back(static_cast<double>(j), plus);
            masses.emplace_back(-static_cast<double>(j), minus);
        }
        marginals.push_back(DiscreteDistribution::from_masses(std::move(masses)));
    }
    return {n, k, eps, v, ProductDistribution(std::move(marginals))};
}

double FiniteLBInstance::hypothesis(const std::vector<double>& t) const {
    if (t.size() != n) throw std::invalid_argument("dimension mismatch");
    std::size_t nonzero = n + 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (t[i] == 0.0) continue;
        if (nonzero != n + 1) return 0.0;  // more than one nonzero coordinate
        nonzero = i;
    }
    if (nonzero == n + 1) return 0.0;  // all zero
    double ti = t[nonzero];
    double j = std::abs(ti);
    if (j < 1.0 || j > static_cast<double>(k) || j != std::floor(j)) return 0.0;
    int sign = ti > 0.0 ? 1 : -1;
    return signs.at(nonzero, static_cast<std::size_t>(j) - 1) == sign ? 1.0 : 0.0;
}

double finite_lb_hypothesis_value(const FiniteLBInstance& inst, const SignMatrix& v_prime) {
    if (v_prime.n != inst.n || v_prime.k != inst.k)
        throw std::invalid_argument("sign matrix shape mismatch");
    // sum over one-hot vectors matching v'; all other coordinates at 0
    double zero_prod = 1.0;
    std::vector<double> p_zero(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) {
        const auto& m = inst.distribution.marginal(i);
        auto it = std::lower_bound(m.support().begin(), m.support().end(), 0.0);
        p_zero[i] = m.probs()[static_cast<std::size_t>(it - m.support().begin())];
        zero_prod *= p_zero[i];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < inst.n; ++i) {
        const auto& m = inst.distribution.marginal(i);
        for (std::size_t j = 1; j <= inst.k; ++j) {
            double target = v_prime.at(i, j - 1) * static_cast<double>(j);
            auto it = std::lower_bound(m.support().begin(), m.support().end(), target);
            double mass = m.probs()[static_cast<std::size_t>(it - m.support().begin())];
            total += mass * zero_prod / p_zero[i];
        }
    }
    return total;
}

double finite_lb_loss(std::size_t n, std::size_t k, double eps, const SignMatrix& v,
                      const SignMatrix& v_prime) {
    std::size_t d = hamming(v, v_prime);
    double nf = static_cast<double>(n), kf = static_cast<double>(k);
    return std::pow(1.0 - 1.0 / nf, nf - 1.0) * static_cast<double>(d) * eps / (nf * kf);
}

// -- hypothesis gap ----------------------------------------------------------

namespace {

// aligned per-coordinate mass tables of two products over their support union
struct AlignedProduct {
    std::vector<std::vector<double>> fp, fq;
    std::size_t total = 1;
};

AlignedProduct align(const ProductDistribution& p, const ProductDistribution& q,
                     std::size_t cap) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("dimension mismatch");
    AlignedProduct out;
    out.fp.resize(p.dimension());
    out.fq.resize(p.dimension());
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        const auto& a = p.marginal(i);
        const auto& b = q.marginal(i);
        std::set<double> values(a.support().begin(), a.support().end());
        values.insert(b.support().begin(), b.support().end());
        auto mass = [](const DiscreteDistribution& d, double v) {
            auto it = std::lower_bound(d.support().begin(), d.support().end(), v);
            if (it == d.support().end() || *it != v) return 0.0;
            return d.probs()[static_cast<std::size_t>(it - d.support().begin())];
        };
        for (double v : values) {
            out.fp[i].push_back(mass(a, v));
            out.fq[i].push_back(mass(b, v));
        }
        if (out.total > cap / values.size() + 1) throw CapExceeded("joint support exceeds cap");
        out.total *= values.size();
    }
    if (out.total > cap) throw CapExceeded("joint support exceeds cap");
    return out;
}

// visit every joint point, passing the two joint masses
template <typename Fn>
void for_each_joint(const AlignedProduct& a, Fn&& fn) {
    std::size_t n = a.fp.size();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        double mp = 1.0, mq = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            mp *= a.fp[i][idx[i]];
            mq *= a.fq[i][idx[i]];
        }
        fn(mp, mq);
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++idx[i] < a.fp[i].size()) break;
            idx[i] = 0;
        }
        if (i == n) break;
    }
}

}  // namespace

double sup_hypothesis_gap_exact(const ProductDistribution& d, const ProductDistribution& e,
                                std::size_t cap) {
    return total_variation_joint(d, e, cap);
}

double sup_hypothesis_gap_sampled(const ProductDistribution& d, const ProductDistribution& e,
                                  std::size_t trials, std::uint64_t seed, std::size_t cap) {
    AlignedProduct a = align(d, e, cap);
    double best = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, {0x68797067ULL, t});
        double gap = 0.0;
        for_each_joint(a, [&](double mp, double mq) { gap += rng.next_double() * (mp - mq); });
        best = std::max(best, std::abs(gap));
    }
    return best;
}

// -- classification extension ------------------------------------------------

ClassificationGapReport classification_perm_check(const LabeledMixture& truth,
                                                  const SampleMatrix& samples,
                                                  const std::vector<int>& labels,
                                                  std::size_t cap) {
    LabeledMixture emp = conditional_product_empirical(samples, labels);

    ClassificationGapReport report;
    report.label_tv = total_variation(truth.label_dist, emp.label_dist);

    auto find = [](const LabeledMixture& m, int y) -> const ProductDistribution* {
        for (std::size_t i = 0; i < m.labels.size(); ++i)
            if (m.labels[i] == y) return &m.conditionals[i];
        return nullptr;
    };
    auto label_mass = [](const DiscreteDistribution& d, int y) {
        auto it = std::lower_bound(d.support().begin(), d.support().end(),
                                   static_cast<double>(y));
        if (it == d.support().end() || *it != static_cast<double>(y)) return 0.0;
        return d.probs()[static_cast<std::size_t>(it - d.support().begin())];
    };

    std::set<int> all_labels(truth.labels.begin(), truth.labels.end());
    all_labels.insert(emp.labels.begin(), emp.labels.end());

    double bound = report.label_tv;
    double joint = 0.0;
    for (int y : all_labels) {
        const ProductDistribution* dy = find(truth, y);
        const ProductDistribution* ey = find(emp, y);
        double wd = label_mass(truth.label_dist, y);
        double we = label_mass(emp.label_dist, y);
        if (dy && ey) {
            bound += we * total_variation_joint(*dy, *ey, cap);
            AlignedProduct a = align(*dy, *ey, cap);
            for_each_joint(a, [&](double mp, double mq) {
                joint += std::abs(wd * mp - we * mq);
            });
        } else {
            // label observed on one side only: its entire mass contributes
            bound += we;  // wd = 0 in the decomposition's second term
            joint += wd + we;
        }
    }
    report.decomposition_bound = bound;
    report.joint_tv = 0.5 * joint;
    return report;
}

}  // namespace harness
}  // namespace perm
