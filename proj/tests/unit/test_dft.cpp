#include "oracles.hpp"

#include "qpca/dft.hpp"
#include "qpca/signal.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <thread>

using namespace qpca;

namespace {

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("FFT agrees with the direct DFT for every small length", "[dft]") {
    Rng rng(1);
    for (std::size_t n = 1; n <= 140; ++n) {
        const oracle::CVec x = oracle::random_vector(n, rng);
        INFO("n = " << n);
        CHECK(max_diff(dft(x), oracle::naive_dft(x)) < 1e-12 * std::sqrt(static_cast<double>(n)) * 10);
        CHECK(max_diff(idft(x), oracle::naive_idft(x)) < 1e-12 * std::sqrt(static_cast<double>(n)) * 10);
    }
}

TEST_CASE("FFT agrees with the direct DFT for large and prime lengths", "[dft]") {
    Rng rng(2);
    for (std::size_t n : {211u, 257u, 331u, 729u, 846u, 850u, 900u, 1009u}) {
        const oracle::CVec x = oracle::random_vector(n, rng);
        INFO("n = " << n);
        CHECK(max_diff(dft(x), oracle::naive_dft(x)) < 1e-11);
    }
}

TEST_CASE("DFT is unitary and round-trips", "[dft]") {
    Rng rng(3);
    for (std::size_t n : {1u, 2u, 9u, 54u, 97u, 128u, 729u, 850u, 1009u}) {
        const oracle::CVec x = oracle::random_vector(n, rng);
        const oracle::CVec x_hat = dft(x);
        INFO("n = " << n);
        CHECK(std::abs(oracle::energy(x_hat) - oracle::energy(x)) < 1e-12 * oracle::energy(x));
        CHECK(max_diff(idft(x_hat), x) < 1e-12 * std::sqrt(oracle::energy(x)));
        CHECK(max_diff(dft(idft(x)), x) < 1e-12 * std::sqrt(oracle::energy(x)));
    }
}

TEST_CASE("picket fence and delta transform pairs", "[dft]") {
    for (auto [symbols, s] : {std::pair<std::size_t, std::size_t>{6, 9}, {4, 3}, {1, 5}, {7, 1}, {81, 9}}) {
        const std::size_t n = symbols * s;
        std::vector<Complex> comb(n);
        for (std::size_t i = 0; i < symbols; ++i) {
            comb[i * s] = 1.0;
        }
        const std::vector<Complex> comb_hat = dft(comb);
        const double height = std::sqrt(static_cast<double>(symbols) / static_cast<double>(s));
        for (std::size_t k = 0; k < n; ++k) {
            const double expected = k % symbols == 0 ? height : 0.0;
            CHECK(std::abs(comb_hat[k] - expected) < 1e-12);
        }
        const Spectrum delta_hat = dft(Signal::delta(n));
        for (const Complex& v : delta_hat) {
            CHECK(std::abs(v - 1.0 / std::sqrt(static_cast<double>(n))) < 1e-12);
        }
    }
}

TEST_CASE("shift theorem", "[dft]") {
    Rng rng(4);
    const std::size_t n = 30;
    const oracle::CVec x = oracle::random_vector(n, rng);
    const oracle::CVec x_hat = dft(x);
    for (std::ptrdiff_t j : {1, 7, 29}) {
        const oracle::CVec shifted_hat = dft(oracle::naive_shift(x, j));
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((static_cast<std::size_t>(j) * k) % n) /
                                 static_cast<double>(n);
            CHECK(std::abs(shifted_hat[k] - std::polar(1.0, angle) * x_hat[k]) < 1e-12);
        }
    }
}

TEST_CASE("Signal and Spectrum overloads match the span versions", "[dft]") {
    Rng rng(8);
    const oracle::CVec x = oracle::random_vector(18, rng);
    const Spectrum s = dft(Signal(x));
    CHECK(max_diff(s.values(), dft(x)) == 0.0);
    const Signal back = idft(s);
    CHECK(max_diff(back.values(), x) < 1e-13 * 10);
}

TEST_CASE("plans are shared safely between threads", "[dft]") {
    Rng rng(9);
    const oracle::CVec x = oracle::random_vector(997, rng);
    const oracle::CVec expected = dft(x);
    std::vector<std::thread> pool;
    std::vector<int> ok(4, 0);
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            bool same = true;
            for (int rep = 0; rep < 20; ++rep) {
                same = same && dft(x) == expected;
                (void)fft_plan(500 + static_cast<std::size_t>(t));
            }
            ok[static_cast<std::size_t>(t)] = same ? 1 : 0;
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    CHECK(ok == std::vector<int>{1, 1, 1, 1});
}
