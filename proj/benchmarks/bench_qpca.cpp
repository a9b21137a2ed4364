#include "qpca/estimate.hpp"
#include "qpca/quasicyclic.hpp"
#include "qpca/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

qpca::Dataset random_dataset(std::size_t m, std::size_t n, std::uint64_t seed) {
    qpca::Rng rng(seed);
    std::vector<qpca::Signal> rows;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<qpca::Complex> y(n);
        for (auto& v : y) {
            const double re = rng.normal();
            v = {re, rng.normal()};
        }
        rows.emplace_back(std::move(y));
    }
    return qpca::Dataset(std::move(rows));
}

// Cost against N at fixed s = 4, m = 32.
void BM_QpcaSymbols(benchmark::State& state) {
    const auto symbols = static_cast<std::size_t>(state.range(0));
    const qpca::Dataset data = random_dataset(32, symbols * 4, 1);
    qpca::QpcaConfig config;
    config.s = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpca::quasicyclic_pca(data, config));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QpcaSymbols)->RangeMultiplier(2)->Range(16, 256)->Complexity();

// Cost against s at fixed N = 64, m = 32.
void BM_QpcaOversampling(benchmark::State& state) {
    const auto s = static_cast<std::size_t>(state.range(0));
    const qpca::Dataset data = random_dataset(32, 64 * s, 2);
    qpca::QpcaConfig config;
    config.s = s;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpca::quasicyclic_pca(data, config));
    }
}
BENCHMARK(BM_QpcaOversampling)->Arg(2)->Arg(4)->Arg(9)->Arg(16);

void BM_QpcaExplicitRoute(benchmark::State& state) {
    const qpca::Dataset data = random_dataset(32, 64 * 4, 3);
    qpca::QpcaConfig config;
    config.s = 4;
    config.route = state.range(0) == 0 ? qpca::AugmentationRoute::Collapsed : qpca::AugmentationRoute::Explicit;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpca::quasicyclic_pca(data, config));
    }
}
BENCHMARK(BM_QpcaExplicitRoute)->Arg(0)->Arg(1);

void BM_PeriodSweep(benchmark::State& state) {
    const qpca::Dataset data = random_dataset(100, 900, 4);
    qpca::QpcaConfig config;
    config.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpca::sweep_period(data, 3, 18, config));
    }
}
BENCHMARK(BM_PeriodSweep)->Unit(benchmark::kMillisecond);

} // namespace
