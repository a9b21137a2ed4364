#include "oracles.hpp"

#include "qpca/error.hpp"
#include "qpca/resample.hpp"
#include "qpca/synth.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace qpca;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

long double sinc_ld(long double x) {
    if (x == 0.0L) {
        return 1.0L;
    }
    const long double pi = std::numbers::pi_v<long double>;
    return std::sin(pi * x) / (pi * x);
}

Complex at(const Signal& x, std::size_t i) { return x[static_cast<std::ptrdiff_t>(i)]; }

} // namespace

TEST_CASE("resampled length", "[resample]") {
    CHECK(resampled_length(850, {8.5, 9}) == 900);
    CHECK(resampled_length(851, {8.5, 9}) == 900);
    CHECK(resampled_length(99, {9.0, 9}) == 99);
    CHECK(resampled_length(10, {2.0, 3}) == 15);
    CHECK_THROWS_AS(resampled_length(10, {0.0, 3}), InvalidArgument);
    CHECK_THROWS_AS(resampled_length(10, {-1.0, 3}), InvalidArgument);
    CHECK_THROWS_AS(resampled_length(10, {2.0, 0}), InvalidArgument);
}

TEST_CASE("grid points are reproduced exactly", "[resample]") {
    Rng rng(61);
    const Dataset data = oracle::random_dataset(3, 36, rng);
    const Dataset same = resample_dataset(data, {4.0, 4});
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(same[i] == data[i]);
    }
    const Dataset decimated = resample_dataset(data, {2.0, 1});
    REQUIRE(decimated.length() == 18);
    for (std::size_t j = 0; j < 18; ++j) {
        CHECK(at(decimated[0], j) == at(data[0], 2 * j));
    }
    // Upsample by two then take every other sample.
    const Dataset up = resample_dataset(data, {1.0, 2});
    const Dataset back = resample_dataset(up, {2.0, 1});
    CHECK(back[1] == data[1]);
    CHECK(sinc_eval(data[2], 4.0, 1.25) == at(data[2], 5));
}

TEST_CASE("sinc_eval matches a direct long double sum", "[resample]") {
    Rng rng(62);
    const oracle::CVec y = oracle::random_vector(40, rng);
    for (int trial = 0; trial < 200; ++trial) {
        const double s_tilde = 0.5 + 9.5 * rng.uniform();
        const double t = (-5.0 + 50.0 * rng.uniform()) / s_tilde;
        std::complex<long double> ref = 0.0L;
        for (std::size_t j = 0; j < y.size(); ++j) {
            const long double w = sinc_ld(static_cast<long double>(s_tilde) * t - static_cast<long double>(j));
            ref += std::complex<long double>(y[j].real(), y[j].imag()) * w;
        }
        const Complex got = sinc_eval(Signal(y), s_tilde, t);
        CHECK(std::abs(got - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 1e-12);
    }
}

TEST_CASE("band-limited cosine is interpolated away from the edges", "[resample]") {
    const std::size_t n = 400;
    const double f = 0.05;  // cycles per sample
    std::vector<Complex> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        y[j] = std::cos(2.0 * std::numbers::pi * f * static_cast<double>(j));
    }
    const Signal x(y);
    double worst = 0.0;
    for (double u = 150.0; u < 250.0; u += 0.37) {
        const double expected = std::cos(2.0 * std::numbers::pi * f * u);
        worst = std::max(worst, std::abs(sinc_eval(x, 1.0, u) - expected));
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("resampling is linear and maps zero to zero", "[resample]") {
    Rng rng(63);
    const oracle::CVec a = oracle::random_vector(60, rng);
    const oracle::CVec b = oracle::random_vector(60, rng);
    oracle::CVec mix(60);
    const Complex ca(0.3, -1.2);
    const Complex cb(2.0, 0.5);
    for (std::size_t i = 0; i < 60; ++i) {
        mix[i] = ca * a[i] + cb * b[i];
    }
    const ResampleSpec spec{7.5, 8};
    const Dataset out = resample_dataset(Dataset({Signal(a), Signal(b), Signal(mix), Signal::zeros(60)}), spec);
    for (std::size_t j = 0; j < out.length(); ++j) {
        CHECK(std::abs(at(out[2], j) - (ca * at(out[0], j) + cb * at(out[1], j))) < 1e-12);
        CHECK(at(out[3], j) == Complex{});
    }
}

TEST_CASE("resampling the fractional example", "[resample]") {
    synth::FractionalOptions options;
    options.m = 5;
    const Dataset data = synth::fractional_scenario(7, options).data;
    REQUIRE(data.length() == 850);
    const Dataset out = resample_dataset(data, {8.5, 9});
    CHECK(out.length() == 900);
    for (std::size_t i = 0; i < data.size(); ++i) {
        // Per-symbol energy is preserved for a band-limited signal.
        const double ratio = out[i].energy() / 9.0 / (data[i].energy() / 8.5);
        CHECK_THAT(ratio, WithinAbs(1.0, 0.05));
    }
}

TEST_CASE("thread count does not change the output", "[resample]") {
    Rng rng(64);
    const Dataset data = oracle::random_dataset(7, 85, rng);
    const Dataset one = resample_dataset(data, {8.5, 9, 1});
    const Dataset four = resample_dataset(data, {8.5, 9, 4});
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(one[i] == four[i]);
    }
}

TEST_CASE("resample errors", "[resample]") {
    Rng rng(65);
    CHECK_THROWS_AS(resample_dataset(Dataset(), {2.0, 2}), InvalidArgument);
    CHECK_THROWS_AS(resample_dataset(oracle::random_dataset(1, 5, rng), {8.5, 9}), InvalidArgument);
}
