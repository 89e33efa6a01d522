#include <benchmark/benchmark.h>

#include "perm/metrics.hpp"
#include "perm/myerson.hpp"
#include "perm/pandora.hpp"
#include "perm/prophet.hpp"
#include "perm/rng.hpp"

namespace {

perm::DiscreteDistribution grid_uniform(std::size_t k) {
    std::vector<double> support(k), probs(k, 1.0 / static_cast<double>(k));
    for (std::size_t j = 0; j < k; ++j)
        support[j] = static_cast<double>(j) / static_cast<double>(k - 1);
    return {std::move(support), std::move(probs)};
}

perm::ProductDistribution product(std::size_t n, std::size_t k) {
    return perm::ProductDistribution(
        std::vector<perm::DiscreteDistribution>(n, grid_uniform(k)));
}

void BM_BackwardInduction(benchmark::State& state) {
    auto d = product(static_cast<std::size_t>(state.range(0)),
                     static_cast<std::size_t>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(perm::prophet::backward_induction(d).opt_value);
}
BENCHMARK(BM_BackwardInduction)->Args({10, 100})->Args({50, 1000});

void BM_ProductHellinger(benchmark::State& state) {
    auto d = product(static_cast<std::size_t>(state.range(0)), 1000);
    auto e = product_empirical(perm::sample(d, 1000, 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(perm::product_hellinger_sq(d, e));
}
BENCHMARK(BM_ProductHellinger)->Arg(10)->Arg(50);

void BM_WeitzmanEvaluate(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    perm::pandora::PandoraInstance inst{product(n, 50), std::vector<double>(n, 0.1)};
    auto p = perm::pandora::weitzman_policy(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(perm::pandora::evaluate_exact(p, inst));
}
BENCHMARK(BM_WeitzmanEvaluate)->Arg(10)->Arg(50);

void BM_Sample(benchmark::State& state) {
    auto d = product(10, 100);
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(perm::sample(d, static_cast<std::size_t>(state.range(0)),
                                              ++seed).data.size());
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000);

void BM_MyersonLearn(benchmark::State& state) {
    auto d = product(5, 100);
    auto samples = perm::sample(d, static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(perm::myerson::learn_perm(samples).bidders());
}
BENCHMARK(BM_MyersonLearn)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
