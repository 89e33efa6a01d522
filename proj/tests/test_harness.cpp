#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "oracles.hpp"
#include "perm/harness.hpp"
#include "perm/metrics.hpp"
#include "perm/rng.hpp"

using namespace perm;
using namespace perm::harness;

namespace {

ExperimentConfig coin_config(Problem problem) {
    DiscreteDistribution coin({0.0, 1.0}, {0.5, 0.5});
    ExperimentConfig cfg;
    cfg.problem = problem;
    cfg.instance = ProductDistribution({coin, coin});
    if (problem == Problem::pandora) cfg.costs = {0.25, 0.25};
    cfg.sample_grid = {50, 200};
    cfg.trials = 4;
    cfg.seed = 12;
    return cfg;
}

std::string csv_string(const SweepResult& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

// full-joint enumeration of E[h^{v'}] under the instance's distribution
double enumerated_hypothesis_value(const FiniteLBInstance& inst, const SignMatrix& v_prime) {
    FiniteLBInstance h = finite_lb_instance(inst.n, inst.k, inst.eps, v_prime);
    double total = 0.0;
    for (const auto& pt : oracles::enumerate_joint(inst.distribution))
        total += pt.p * h.hypothesis(pt.t);
    return total;
}

}  // namespace

TEST_CASE("problem names round trip") {
    for (auto p : {Problem::prophet, Problem::pandora, Problem::auction})
        CHECK(problem_from_string(to_string(p)) == p);
    CHECK_THROWS_AS(problem_from_string("poker"), std::invalid_argument);
}

TEST_CASE("sweep on point-mass instances has zero regret") {
    ExperimentConfig cfg;
    cfg.problem = Problem::prophet;
    cfg.instance = ProductDistribution({DiscreteDistribution::point_mass(0.4),
                                        DiscreteDistribution::point_mass(0.9)});
    cfg.sample_grid = {10, 20};
    cfg.trials = 3;
    cfg.seed = 5;
    auto result = run_sweep(cfg);
    REQUIRE(result.rows.size() == 6);
    for (const auto& row : result.rows) CHECK(row.regret == 0.0);
}

TEST_CASE("sweep CSV is byte-identical under a fixed seed and thread count") {
    for (auto problem : {Problem::prophet, Problem::pandora, Problem::auction}) {
        auto cfg = coin_config(problem);
        std::string a = csv_string(run_sweep(cfg));
        std::string b = csv_string(run_sweep(cfg));
        CHECK(a == b);
        CHECK(a.substr(0, a.find('\n')) == "problem,n,k,N,trial,seed,opt,alg,regret");

        setenv("PERM_THREADS", "4", 1);
        std::string c = csv_string(run_sweep(cfg));
        unsetenv("PERM_THREADS");
        CHECK(a == c);
    }
}

TEST_CASE("sweep validates its configuration") {
    auto cfg = coin_config(Problem::prophet);
    cfg.trials = 0;
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
    cfg = coin_config(Problem::prophet);
    cfg.sample_grid = {100, 50};
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}

TEST_CASE("median regret trends down as N grows") {
    DiscreteDistribution m({0.0, 0.25, 0.5, 0.75, 1.0}, {0.2, 0.2, 0.2, 0.2, 0.2});
    ExperimentConfig cfg;
    cfg.problem = Problem::auction;
    cfg.instance = ProductDistribution({m, m});
    cfg.sample_grid = {30, 3000};
    cfg.trials = 21;
    cfg.seed = 77;
    auto medians = run_sweep(cfg).median_regrets();
    REQUIRE(medians.size() == 2);
    CHECK(medians[1].second <= medians[0].second);
}

TEST_CASE("log_log_slope recovers exact power laws") {
    std::vector<std::pair<std::size_t, double>> pts{{10, 0.1}, {100, 0.01}, {1000, 0.001}};
    CHECK(log_log_slope(pts) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(log_log_slope({{10, 0.1}}), std::invalid_argument);
}

TEST_CASE("finite lower-bound instance pmf") {
    auto v = SignMatrix::all_plus(2, 1);
    auto inst = finite_lb_instance(2, 1, 0.5, v);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& m = inst.distribution.marginal(i);
        REQUIRE(m.support() == std::vector<double>{-1.0, 0.0, 1.0});
        CHECK(m.probs()[0] == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(m.probs()[1] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(m.probs()[2] == doctest::Approx(0.375).epsilon(1e-15));
    }
    CHECK_THROWS_AS(finite_lb_instance(1, 1, 0.5, SignMatrix::all_plus(1, 1)),
                    std::invalid_argument);
}

TEST_CASE("lower-bound hypothesis fires only on matching one-hot vectors") {
    auto v = SignMatrix::all_plus(3, 2);
    v.signs[2] = -1;  // row 1, column 0
    auto inst = finite_lb_instance(3, 2, 0.3, v);
    CHECK(inst.hypothesis({0, 0, 0}) == 0.0);
    CHECK(inst.hypothesis({1, 0, 0}) == 1.0);
    CHECK(inst.hypothesis({-1, 0, 0}) == 0.0);
    CHECK(inst.hypothesis({0, -1, 0}) == 1.0);  // flipped sign matches -1
    CHECK(inst.hypothesis({0, 2, 0}) == 1.0);
    CHECK(inst.hypothesis({1, 1, 0}) == 0.0);  // two nonzero coordinates
    CHECK(inst.hypothesis({0, 0, 3}) == 0.0);  // outside the column range
}

TEST_CASE("finite lower-bound loss closed form equals enumeration") {
    CHECK(finite_lb_loss(2, 1, 0.5, SignMatrix::all_plus(2, 1), SignMatrix::all_plus(2, 1)) ==
          0.0);

    auto v = SignMatrix::all_plus(2, 1);
    auto flipped = v;
    flipped.signs[0] = -1;
    CHECK(finite_lb_loss(2, 1, 0.5, v, flipped) == doctest::Approx(0.125).epsilon(1e-15));

    auto v32 = SignMatrix::all_plus(3, 2);
    auto w32 = v32;
    for (std::size_t i : {0u, 2u, 3u, 5u}) w32.signs[i] = -1;
    CHECK(finite_lb_loss(3, 2, 0.3, v32, w32) ==
          doctest::Approx((2.0 / 3) * (2.0 / 3) * 4 * 0.3 / 6).epsilon(1e-12));

    Rng rng = Rng::stream(61, {0});
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::size_t k = 1; k <= 3; ++k) {
            auto a = SignMatrix::all_plus(n, k);
            auto b = a;
            for (auto& s : b.signs) s = rng.next_below(2) ? 1 : -1;
            auto inst = finite_lb_instance(n, k, 0.3, a);
            double direct =
                enumerated_hypothesis_value(inst, a) - enumerated_hypothesis_value(inst, b);
            CHECK(finite_lb_loss(n, k, 0.3, a, b) == doctest::Approx(direct).epsilon(1e-12));
            CHECK(finite_lb_hypothesis_value(inst, b) ==
                  doctest::Approx(enumerated_hypothesis_value(inst, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("hypothesis gap: exact equals joint TV, sampled stays below") {
    Rng rng = Rng::stream(62, {0});
    for (int trial = 0; trial < 30; ++trial) {
        auto p = oracles::random_product(rng, 2, 3);
        auto q = oracles::random_product(rng, 2, 3);
        double exact = sup_hypothesis_gap_exact(p, q);
        CHECK(exact == doctest::Approx(oracles::joint_total_variation(p, q)).epsilon(1e-12));
        CHECK(sup_hypothesis_gap_sampled(p, q, 50, 7) <= exact + 1e-12);
    }
    auto d = oracles::random_product(rng, 2, 3);
    CHECK(sup_hypothesis_gap_exact(d, d) == 0.0);
    CHECK(sup_hypothesis_gap_sampled(d, d, 10, 7) == 0.0);
}

TEST_CASE("classification decomposition bounds the joint TV") {
    // one label: the check reduces to a plain product comparison
    DiscreteDistribution coin({0.0, 1.0}, {0.5, 0.5});
    LabeledMixture truth{DiscreteDistribution::point_mass(0.0),
                         {0},
                         {ProductDistribution({coin, coin})}};
    SampleMatrix s;
    s.data = {{0, 0}, {0, 1}, {1, 1}, {1, 1}};
    auto report = classification_perm_check(truth, s, {0, 0, 0, 0});
    CHECK(report.label_tv == 0.0);
    auto emp = product_empirical(s);
    double tv = total_variation_joint(truth.conditionals[0], emp);
    CHECK(report.joint_tv == doctest::Approx(tv).epsilon(1e-12));
    CHECK(report.decomposition_bound == doctest::Approx(tv).epsilon(1e-12));

    // random labeled instances: the bound always dominates the joint TV
    Rng rng = Rng::stream(63, {0});
    for (int trial = 0; trial < 30; ++trial) {
        LabeledMixture mix{DiscreteDistribution({0.0, 1.0}, {0.4, 0.6}),
                           {0, 1},
                           {oracles::random_product(rng, 2, 3),
                            oracles::random_product(rng, 2, 3)}};
        SampleMatrix samples;
        std::vector<int> labels;
        for (int r = 0; r < 40; ++r) {
            int y = rng.next_double() < 0.4 ? 0 : 1;
            labels.push_back(y);
            const auto& cond = mix.conditionals[static_cast<std::size_t>(y)];
            std::vector<double> row;
            for (const auto& m : cond.marginals())
                row.push_back(m.sample_value(rng.next_double()));
            samples.data.push_back(std::move(row));
        }
        auto rep = classification_perm_check(mix, samples, labels);
        CHECK(rep.decomposition_bound >= rep.joint_tv - 1e-12);
        CHECK(rep.joint_tv >= 0.0);
        CHECK(rep.label_tv <= rep.decomposition_bound + 1e-15);
    }

    // identical truth and empirical: everything is zero
    SampleMatrix exact_s;
    exact_s.data = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    LabeledMixture exact_truth{DiscreteDistribution::point_mass(0.0),
                               {0},
                               {ProductDistribution({coin, coin})}};
    auto zero = classification_perm_check(exact_truth, exact_s, {0, 0, 0, 0});
    CHECK(zero.joint_tv == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(zero.decomposition_bound == doctest::Approx(0.0).epsilon(1e-15));
}
