// perm: command-line front end for the sample-based learning library.
//
// Exit codes: 0 success, 1 internal error, 2 instance schema error,
// 3 enumeration cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perm/harness.hpp"
#include "perm/json_io.hpp"
#include "perm/metrics.hpp"
#include "perm/myerson.hpp"
#include "perm/pandora.hpp"
#include "perm/prophet.hpp"
#include "perm/rng.hpp"
#include "perm/shading.hpp"

namespace {

void print_g(const char* key, double v) {
    std::printf("%s=%.12g\n", key, v);
}

std::optional<double> opt_grid(double grid) {
    if (grid > 0.0) return grid;
    return std::nullopt;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

void run_learn_sweep(perm::harness::ExperimentConfig cfg, const std::string& out) {
    auto result = perm::harness::run_sweep(cfg);
    std::ofstream file;
    perm::harness::write_csv(result, open_output(file, out));
}

// -- metrics -----------------------------------------------------------------

void cmd_metrics(const std::string& a, const std::string& b, std::size_t cap) {
    perm::ProductDistribution p = perm::load_instance(a);
    perm::ProductDistribution q = perm::load_instance(b);
    double h2 = perm::product_hellinger_sq(p, q);
    double upper = perm::total_variation_product_upper(p, q);
    double joint = perm::total_variation_joint(p, q, cap);
    std::printf("n,hellinger_sq,tv_joint,tv_upper\n");
    std::printf("%zu,%.12g,%.12g,%.12g\n", p.dimension(), h2, joint, upper);
}

// -- prophet -----------------------------------------------------------------

void cmd_prophet_solve(const std::string& path) {
    auto d = perm::load_instance(path);
    auto sol = perm::prophet::backward_induction(d);
    print_g("opt", sol.opt_value);
    for (std::size_t i = 0; i < sol.strategy.rounds(); ++i)
        std::printf("threshold[%zu]=%.12g\n", i, sol.strategy.thresholds[i]);
}

void cmd_prophet_eval(const std::string& path, const std::vector<double>& thresholds) {
    auto d = perm::load_instance(path);
    perm::prophet::ThresholdStrategy s{thresholds};
    print_g("value", perm::prophet::evaluate_exact(s, d));
}

void cmd_prophet_decompose(const std::string& path, const std::vector<double>& thresholds) {
    auto d = perm::load_instance(path);
    perm::prophet::ThresholdStrategy s{thresholds};
    auto terms = perm::prophet::error_decomposition(s, d);
    double total = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::printf("term[%zu]=%.12g\n", i, terms[i]);
        total += terms[i];
    }
    print_g("total", total);
}

void cmd_prophet_iid_strategy(std::size_t n, double eps) {
    auto s = perm::prophet::iid_quantile_strategy(n, eps);
    for (std::size_t i = 0; i < s.rounds(); ++i)
        std::printf("eps[%zu]=%.12g\n", i, s.eps[i]);
}

// -- pandora -----------------------------------------------------------------

void print_policy(const perm::pandora::PandoraPolicy& p) {
    for (std::size_t k = 0; k < p.order.size(); ++k)
        std::printf("order[%zu]=%zu sigma=%.12g\n", k, p.order[k], p.sigmas[k]);
    if (p.budget) print_g("budget", *p.budget);
}

void cmd_pandora_solve(const std::string& path) {
    auto inst = perm::load_pandora_instance(path);
    auto policy = perm::pandora::weitzman_policy(inst);
    print_g("value", perm::pandora::evaluate_exact(policy, inst));
    print_policy(policy);
}

void cmd_pandora_eval(const std::string& path, const std::string& policy_path) {
    auto inst = perm::load_pandora_instance(path);
    auto policy = perm::load_pandora_policy(policy_path);
    print_g("value", perm::pandora::evaluate_exact(policy, inst));
}

void cmd_pandora_oracle(const std::string& path) {
    auto inst = perm::load_pandora_instance(path);
    print_g("value", perm::pandora::brute_force_optimal(inst));
}

void cmd_pandora_hard_instance(std::size_t n, double eps, std::size_t n_plus,
                               const std::string& out) {
    std::vector<bool> signs(n, false);
    for (std::size_t i = 0; i < n_plus && i < n; ++i) signs[i] = true;
    auto inst = perm::pandora::hard_instance(n, eps, signs);
    perm::save_pandora_instance(inst, out);
    print_g("opt", perm::pandora::hard_instance_opt(n, eps, n_plus));
}

// -- auction -----------------------------------------------------------------

void cmd_auction_solve(const std::string& path, std::size_t cap) {
    auto d = perm::load_instance(path);
    auto a = perm::myerson::myerson_auction(d);
    print_g("revenue", perm::myerson::expected_revenue(a, d, cap));
    for (std::size_t i = 0; i < a.bidders(); ++i) {
        const auto& t = a.table(i);
        for (std::size_t j = 0; j < t.values.size(); ++j)
            std::printf("phi[%zu][%zu]=%.12g (value %.12g)\n", i, j, t.phi[j],
                        t.values[j]);
    }
}

void cmd_auction_eval(const std::string& design_path, const std::string& truth_path,
                      std::size_t cap) {
    auto design = perm::load_instance(design_path);
    auto truth = perm::load_instance(truth_path);
    auto a = perm::myerson::myerson_auction(design);
    print_g("revenue", perm::myerson::expected_revenue(a, truth, cap));
}

// -- lower bounds ------------------------------------------------------------

void cmd_lb_finite(std::size_t n, std::size_t k, double eps,
                   const std::vector<std::size_t>& flips) {
    auto v = perm::harness::SignMatrix::all_plus(n, k);
    auto v_prime = v;
    for (std::size_t f : flips) {
        if (f >= n * k) throw std::runtime_error("flip index out of range");
        v_prime.signs[f] = -v_prime.signs[f];
    }
    auto inst = perm::harness::finite_lb_instance(n, k, eps, v);
    double closed = perm::harness::finite_lb_loss(n, k, eps, v, v_prime);
    double direct = perm::harness::finite_lb_hypothesis_value(inst, v) -
                    perm::harness::finite_lb_hypothesis_value(inst, v_prime);
    std::printf("hamming=%zu\n", perm::harness::hamming(v, v_prime));
    print_g("loss_closed_form", closed);
    print_g("loss_enumerated", direct);
}

void cmd_lb_pandora(std::size_t n, double eps, std::size_t n_plus, std::size_t k_plus,
                    std::size_t k_minus) {
    print_g("opt", perm::pandora::hard_instance_opt(n, eps, n_plus));
    print_g("policy_value",
            perm::pandora::hard_instance_policy_value(n, eps, n_plus, k_plus, k_minus));
}

// -- classification ----------------------------------------------------------

void cmd_check_classification(const std::string& mixture_path, std::size_t N,
                              std::uint64_t seed, std::size_t cap) {
    perm::LabeledMixture truth = perm::load_labeled_mixture(mixture_path);

    // draw labeled samples: label first, then the conditional feature vector
    perm::SampleMatrix samples;
    samples.seed = seed;
    std::vector<int> labels;
    std::size_t n = truth.conditionals.front().dimension();
    for (std::size_t r = 0; r < N; ++r) {
        perm::Rng rng = perm::Rng::stream(seed, {0x636c7366ULL, r});
        double u = rng.next_double();
        double lv = truth.label_dist.sample_value(u);
        std::size_t li = 0;
        while (static_cast<double>(truth.labels[li]) != lv) ++li;
        labels.push_back(truth.labels[li]);
        std::vector<double> row(n);
        for (std::size_t i = 0; i < n; ++i)
            row[i] = truth.conditionals[li].marginal(i).sample_value(rng.next_double());
        samples.data.push_back(std::move(row));
    }

    auto report = perm::harness::classification_perm_check(truth, samples, labels, cap);
    print_g("label_tv", report.label_tv);
    print_g("decomposition_bound", report.decomposition_bound);
    print_g("joint_tv", report.joint_tv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sample-based learning for product distributions"};
    app.require_subcommand(1);

    std::string instance, instance_b, policy_path, out;
    std::vector<double> thresholds;
    std::vector<std::size_t> sample_grid{100, 1000, 10000};
    std::vector<std::size_t> flips;
    std::size_t cap = perm::kDefaultJointCap;
    std::size_t n = 2, k = 1, n_plus = 1, k_plus = 0, k_minus = 0;
    std::size_t trials = 20, mc_trials = 100000, N = 1000;
    double eps = 0.05, delta = 0.1, grid = 0.0, budget = -1.0, threshold = 0.0;
    std::uint64_t seed = 1;

    // metrics
    auto* metrics = app.add_subcommand("metrics", "distances between two instances");
    metrics->add_option("truth", instance, "truth instance JSON")->required();
    metrics->add_option("other", instance_b, "comparison instance JSON")->required();
    metrics->add_option("--cap", cap, "joint enumeration cap");

    // prophet
    auto* prophet = app.add_subcommand("prophet", "sequential selection");
    prophet->require_subcommand(1);
    auto* p_solve = prophet->add_subcommand("solve", "optimal thresholds and value");
    p_solve->add_option("instance", instance)->required();
    auto* p_eval = prophet->add_subcommand("eval", "exact value of given thresholds");
    p_eval->add_option("instance", instance)->required();
    p_eval->add_option("--thresholds", thresholds)->required()->delimiter(',');
    auto* p_dec = prophet->add_subcommand("decompose", "per-round error terms");
    p_dec->add_option("instance", instance)->required();
    p_dec->add_option("--thresholds", thresholds)->required()->delimiter(',');
    auto* p_learn = prophet->add_subcommand("learn", "sample, learn, report regret CSV");
    p_learn->add_option("instance", instance)->required();
    p_learn->add_option("--N", sample_grid)->delimiter(',');
    p_learn->add_option("--trials", trials);
    p_learn->add_option("--seed", seed);
    p_learn->add_option("--grid", grid, "value discretization (0 = off)");
    p_learn->add_option("--out", out, "CSV path (default stdout)");
    auto* p_iid = prophet->add_subcommand("iid-strategy", "ODE acceptance probabilities");
    p_iid->add_option("--n", n)->required();
    p_iid->add_option("--eps", eps);

    // pandora
    auto* pandora = app.add_subcommand("pandora", "costly inspection");
    pandora->require_subcommand(1);
    auto* d_solve = pandora->add_subcommand("solve", "index policy and value");
    d_solve->add_option("instance", instance)->required();
    auto* d_eval = pandora->add_subcommand("eval", "exact value of a policy file");
    d_eval->add_option("instance", instance)->required();
    d_eval->add_option("--policy", policy_path)->required();
    auto* d_learn = pandora->add_subcommand("learn", "sample, learn, report regret CSV");
    d_learn->add_option("instance", instance)->required();
    d_learn->add_option("--N", sample_grid)->delimiter(',');
    d_learn->add_option("--trials", trials);
    d_learn->add_option("--seed", seed);
    d_learn->add_option("--grid", grid, "value discretization (0 = off)");
    d_learn->add_option("--out", out, "CSV path (default stdout)");
    auto* d_oracle = pandora->add_subcommand("oracle", "brute-force optimal value");
    d_oracle->add_option("instance", instance)->required();
    auto* d_hard = pandora->add_subcommand("hard-instance", "write a hard instance");
    d_hard->add_option("--n", n)->required();
    d_hard->add_option("--eps", eps);
    d_hard->add_option("--n-plus", n_plus, "boxes with the favorable bias");
    d_hard->add_option("--out", out)->required();

    // auction
    auto* auction = app.add_subcommand("auction", "single-item revenue");
    auction->require_subcommand(1);
    auto* a_solve = auction->add_subcommand("solve", "optimal auction and revenue");
    a_solve->add_option("instance", instance)->required();
    a_solve->add_option("--cap", cap);
    auto* a_eval = auction->add_subcommand("eval", "design on one instance, revenue on another");
    a_eval->add_option("design", instance)->required();
    a_eval->add_option("truth", instance_b)->required();
    a_eval->add_option("--cap", cap);
    auto* a_learn = auction->add_subcommand("learn", "sample, learn, report regret CSV");
    a_learn->add_option("instance", instance)->required();
    a_learn->add_option("--N", sample_grid)->delimiter(',');
    a_learn->add_option("--trials", trials);
    a_learn->add_option("--seed", seed);
    a_learn->add_option("--grid", grid, "value discretization (0 = off)");
    a_learn->add_option("--out", out, "CSV path (default stdout)");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "orchestration");
    experiment->require_subcommand(1);
    auto* sweep = experiment->add_subcommand("sweep", "sample-complexity sweep");
    std::string problem_name = "prophet";
    sweep->add_option("--problem", problem_name, "prophet|pandora|auction")->required();
    sweep->add_option("--instance", instance)->required();
    sweep->add_option("--N", sample_grid)->delimiter(',');
    sweep->add_option("--trials", trials);
    sweep->add_option("--eps", eps);
    sweep->add_option("--delta", delta);
    sweep->add_option("--seed", seed);
    sweep->add_option("--grid", grid, "value discretization (0 = off)");
    sweep->add_option("--out", out, "CSV path (default stdout)");

    // lb
    auto* lb = app.add_subcommand("lb", "lower-bound families");
    lb->require_subcommand(1);
    auto* lb_finite = lb->add_subcommand("finite", "finite-domain instance loss");
    lb_finite->add_option("--n", n)->required();
    lb_finite->add_option("--k", k)->required();
    lb_finite->add_option("--eps", eps);
    lb_finite->add_option("--flip", flips, "flat sign indices to flip in v'")
        ->delimiter(',');
    auto* lb_pandora = lb->add_subcommand("pandora", "hard-instance closed forms");
    lb_pandora->add_option("--n", n)->required();
    lb_pandora->add_option("--eps", eps);
    lb_pandora->add_option("--n-plus", n_plus)->required();
    lb_pandora->add_option("--k-plus", k_plus, "favorable boxes skipped");
    lb_pandora->add_option("--k-minus", k_minus, "unfavorable boxes opened");

    // check
    auto* check = app.add_subcommand("check", "theorem checks");
    check->require_subcommand(1);
    auto* classification = check->add_subcommand("classification", "decomposition bound");
    classification->add_option("mixture", instance, "labeled mixture JSON")->required();
    classification->add_option("--N", N, "sample count");
    classification->add_option("--seed", seed);
    classification->add_option("--cap", cap);

    (void)threshold;
    (void)mc_trials;
    (void)budget;

    CLI11_PARSE(app, argc, argv);

    try {
        if (*metrics) cmd_metrics(instance, instance_b, cap);
        if (*p_solve) cmd_prophet_solve(instance);
        if (*p_eval) cmd_prophet_eval(instance, thresholds);
        if (*p_dec) cmd_prophet_decompose(instance, thresholds);
        if (*p_iid) cmd_prophet_iid_strategy(n, eps);
        if (*d_solve) cmd_pandora_solve(instance);
        if (*d_eval) cmd_pandora_eval(instance, policy_path);
        if (*d_oracle) cmd_pandora_oracle(instance);
        if (*d_hard) cmd_pandora_hard_instance(n, eps, n_plus, out);
        if (*a_solve) cmd_auction_solve(instance, cap);
        if (*a_eval) cmd_auction_eval(instance, instance_b, cap);
        if (*lb_finite) cmd_lb_finite(n, k, eps, flips);
        if (*lb_pandora) cmd_lb_pandora(n, eps, n_plus, k_plus, k_minus);
        if (*classification) cmd_check_classification(instance, N, seed, cap);

        if (*p_learn || *d_learn || *a_learn || *sweep) {
            perm::harness::ExperimentConfig cfg;
            if (*p_learn) cfg.problem = perm::harness::Problem::prophet;
            if (*d_learn) cfg.problem = perm::harness::Problem::pandora;
            if (*a_learn) cfg.problem = perm::harness::Problem::auction;
            if (*sweep) cfg.problem = perm::harness::problem_from_string(problem_name);
            if (cfg.problem == perm::harness::Problem::pandora) {
                auto inst = perm::load_pandora_instance(instance);
                cfg.instance = inst.rewards;
                cfg.costs = inst.costs;
            } else {
                cfg.instance = perm::load_instance(instance);
            }
            cfg.sample_grid = sample_grid;
            cfg.trials = trials;
            cfg.eps = eps;
            cfg.delta = delta;
            cfg.seed = seed;
            cfg.grid = opt_grid(grid);
            run_learn_sweep(std::move(cfg), out);
        }
    } catch (const perm::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 2;
    } catch (const perm::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
