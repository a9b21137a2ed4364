#include "oracles.hpp"

#include "qpca/error.hpp"
#include "qpca/estimate.hpp"
#include "qpca/synth.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace qpca;
using Catch::Matchers::WithinAbs;

namespace {

// Noiseless frames over one random 4-shift-orthonormal pulse, N = 30.
Dataset single_pulse_data() {
    synth::IntroOptions options;
    options.m = 40;
    options.symbols = 30;
    options.s = 4;
    options.random_pulse = true;
    return synth::intro_scenario(5, options).data;
}

} // namespace

TEST_CASE("noiseless sweep finds the true period", "[estimate]") {
    const Dataset data = single_pulse_data();
    const PeriodSweep sweep = sweep_period(data, 3, 8, QpcaConfig{});
    REQUIRE(sweep.rows.size() == 6);
    CHECK(sweep.best_s == 4);
    const PeriodSweepRow& row = sweep.rows[1];
    CHECK(row.s == 4);
    CHECK(row.lambda1 > 0.999);
    CHECK(std::isinf(row.ratio));
    for (const PeriodSweepRow& r : sweep.rows) {
        CHECK(r.n_used == 120 / r.s * r.s);
        if (r.lambda2 > 0.0) {
            CHECK(r.ratio >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("divisors of the period tie with it", "[estimate]") {
    // The 2-shift family of a 4-periodic frame set is also rank one per coset,
    // so s = 2 and s = 4 both report an infinite ratio and the smaller wins.
    const PeriodSweep sweep = sweep_period(single_pulse_data(), 2, 8, QpcaConfig{});
    CHECK(std::isinf(sweep.rows[0].ratio));
    CHECK(std::isinf(sweep.rows[2].ratio));
    CHECK(sweep.rows[2].lambda1 > 0.999);
    CHECK(sweep.best_s == 2);
}

TEST_CASE("noisy example sweep peaks at s = 9", "[estimate]") {
    synth::SweepOptions options;
    options.m = 40;
    const Dataset data = synth::sweep_scenario(11, options).data;
    const PeriodSweep sweep = sweep_period(data, 6, 12, QpcaConfig{});
    CHECK(sweep.best_s == 9);
}

TEST_CASE("white noise gives a flat sweep", "[estimate]") {
    Rng rng(70);
    const Dataset data = oracle::random_dataset(100, 180, rng);
    const PeriodSweep sweep = sweep_period(data, 2, 18, QpcaConfig{});
    for (const PeriodSweepRow& row : sweep.rows) {
        INFO("s = " << row.s);
        CHECK(row.ratio <= 3.0);
    }
}

TEST_CASE("sweep edge cases", "[estimate]") {
    Rng rng(71);
    const Dataset data = oracle::random_dataset(6, 20, rng);
    const PeriodSweep single = sweep_period(data, 5, 5, QpcaConfig{});
    REQUIRE(single.rows.size() == 1);
    CHECK(single.best_s == 5);
    CHECK_THROWS_AS(sweep_period(data, 0, 4, QpcaConfig{}), InvalidArgument);
    CHECK_THROWS_AS(sweep_period(data, 5, 4, QpcaConfig{}), InvalidArgument);
    CHECK_THROWS_AS(sweep_period(data, 3, 21, QpcaConfig{}), InvalidArgument);
    CHECK_THROWS_AS(sweep_period(Dataset(), 1, 1, QpcaConfig{}), InvalidArgument);
}

TEST_CASE("sweeps are deterministic", "[estimate]") {
    Rng rng(72);
    const Dataset data = oracle::random_dataset(10, 48, rng);
    QpcaConfig config;
    config.threads = 1;
    const PeriodSweep a = sweep_period(data, 2, 9, config);
    config.threads = 3;
    const PeriodSweep b = sweep_period(data, 2, 9, config);
    const PeriodSweep c = sweep_period(data, 2, 9, config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].lambda1 == b.rows[i].lambda1);
        CHECK(a.rows[i].lambda2 == b.rows[i].lambda2);
        CHECK(b.rows[i].ratio == c.rows[i].ratio);
    }
    CHECK(a.best_s == b.best_s);
}

TEST_CASE("bandwidth estimate of white noise", "[estimate]") {
    Rng rng(73);
    const Dataset data = oracle::random_dataset(400, 200, rng);
    const BandwidthEstimate estimate = bandwidth_period_estimate(data);
    CHECK_THAT(estimate.band_fraction, WithinAbs(0.95, 0.01));
    CHECK_THAT(estimate.s_estimate, WithinAbs(1.0 / 0.95, 0.02));
}

TEST_CASE("bandwidth estimate of RRC data", "[estimate]") {
    const BandwidthEstimate example = bandwidth_period_estimate(synth::sweep_scenario(3).data);
    CHECK(example.s_estimate >= 5.0);
    CHECK(example.s_estimate <= 9.0);

    synth::ModulationSpec spec;
    spec.symbols = 100;
    spec.s = 9.0;
    spec.alpha = 0.0;
    const BandwidthEstimate sinc = bandwidth_period_estimate(synth::single_system(spec, 50, Rng(4)));
    CHECK_THAT(sinc.s_estimate, WithinAbs(9.0, 1.0));
}

TEST_CASE("bandwidth estimate errors", "[estimate]") {
    Rng rng(74);
    const Dataset data = oracle::random_dataset(2, 8, rng);
    CHECK_THROWS_AS(bandwidth_period_estimate(data, 0.0), InvalidArgument);
    CHECK_THROWS_AS(bandwidth_period_estimate(data, 1.0), InvalidArgument);
    CHECK_THROWS_AS(bandwidth_period_estimate(Dataset({Signal::zeros(8)})), DegenerateInput);
}
