#include "qpca/dft.hpp"
#include "qpca/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<qpca::Complex> random_input(std::size_t n) {
    qpca::Rng rng(n);
    std::vector<qpca::Complex> x(n);
    for (auto& v : x) {
        const double re = rng.normal();
        v = {re, rng.normal()};
    }
    return x;
}

void BM_Dft(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_input(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpca::dft(x));
    }
    state.SetComplexityN(state.range(0));
}

} // namespace

// Powers of two, smooth composites, and primes (Bluestein).
BENCHMARK(BM_Dft)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096)->Arg(729)->Arg(900)->Arg(846)->Arg(1009)->Arg(4099);
