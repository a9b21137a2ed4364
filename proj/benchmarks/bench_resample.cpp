#include "qpca/resample.hpp"
#include "qpca/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_Resample(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    qpca::Rng rng(7);
    std::vector<qpca::Signal> rows;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<qpca::Complex> y(850);
        for (auto& v : y) {
            v = rng.normal();
        }
        rows.emplace_back(std::move(y));
    }
    const qpca::Dataset data(std::move(rows));
    const qpca::ResampleSpec spec{8.5, 9, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpca::resample_dataset(data, spec));
    }
}
BENCHMARK(BM_Resample)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace
