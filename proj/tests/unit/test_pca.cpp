#include "oracles.hpp"

#include "qpca/error.hpp"
#include "qpca/pca.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace qpca;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<oracle::CVec> rows_of(const Dataset& data) {
    std::vector<oracle::CVec> rows;
    for (const Signal& y : data) {
        rows.emplace_back(y.begin(), y.end());
    }
    return rows;
}

// sum_i |<y_i, u>|^2
double objective(const Dataset& data, const oracle::CVec& u) {
    double sum = 0.0;
    for (const Signal& y : data) {
        sum += std::norm(oracle::dot(oracle::CVec(y.begin(), y.end()), u));
    }
    return sum;
}

} // namespace

TEST_CASE("center", "[pca]") {
    Rng rng(31);
    const Dataset data = oracle::random_dataset(5, 8, rng);
    const pca::CenterResult c = pca::center(data);
    CHECK(c.centered.centered());
    for (std::size_t i = 0; i < 8; ++i) {
        Complex mean = 0.0;
        for (const Signal& y : c.centered) {
            mean += y[static_cast<std::ptrdiff_t>(i)];
        }
        CHECK(std::abs(mean / 5.0) < 1e-13);
        Complex raw = 0.0;
        for (const Signal& y : data) {
            raw += y[static_cast<std::ptrdiff_t>(i)];
        }
        CHECK(std::abs(raw / 5.0 - c.centroid[static_cast<std::ptrdiff_t>(i)]) < 1e-13);
    }

    const pca::CenterResult single = pca::center(Dataset({Signal{1.0, Complex(2, 3)}}));
    CHECK(single.centered[0].energy() == 0.0);

    const Dataset zero_mean({Signal{1.0, -2.0}, Signal{-1.0, 2.0}});
    const pca::CenterResult same = pca::center(zero_mean);
    CHECK(same.centroid.energy() == 0.0);
    CHECK(same.centered[0] == zero_mean[0]);

    CHECK_THROWS_AS(pca::center(Dataset{}), InvalidArgument);
}

TEST_CASE("first_component on rank-one data", "[pca]") {
    const Dataset data({Signal{2.0, 0.0, 0.0}, Signal{Complex(0, 3), 0.0, 0.0}, Signal{-1.0, 0.0, 0.0}});
    const pca::Component c = pca::first_component(data);
    CHECK(std::abs(c.vector[0] - 1.0) < 1e-12);
    CHECK(std::abs(c.vector[1]) < 1e-12);
    CHECK_THAT(c.eigenvalue, WithinRel(14.0, 1e-12));
}

TEST_CASE("first_component of a single vector", "[pca]") {
    const Signal y{Complex(0, 1), 2.0, Complex(1, -1)};
    const pca::Component c = pca::first_component(Dataset({y}));
    const Signal expected = pca::phase_normalize((1.0 / y.norm()) * y);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(c.vector[static_cast<std::ptrdiff_t>(i)] - expected[static_cast<std::ptrdiff_t>(i)]) < 1e-12);
    }
    CHECK_THAT(c.eigenvalue, WithinRel(y.energy(), 1e-12));
}

TEST_CASE("first_component matches the dense oracle", "[pca]") {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const Dataset data = oracle::random_dataset(8, 5, rng);
        const pca::Component c = pca::first_component(data);
        const oracle::EigenPairs ref = oracle::hermitian_eigen(oracle::covariance(rows_of(data)));
        CHECK_THAT(c.eigenvalue, WithinRel(ref.values[0], 1e-9));
        const oracle::CVec q(c.vector.begin(), c.vector.end());
        CHECK(std::abs(oracle::dot(q, ref.vectors[0])) > 1 - 1e-9);
        CHECK_THAT(c.vector.norm(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("first_component beats random directions", "[pca]") {
    Rng rng(33);
    const Dataset data = oracle::random_dataset(4, 3, rng);
    const pca::Component c = pca::first_component(data);
    for (int trial = 0; trial < 10000; ++trial) {
        oracle::CVec u = oracle::random_vector(3, rng);
        const double norm = std::sqrt(oracle::energy(u));
        for (Complex& v : u) {
            v /= norm;
        }
        REQUIRE(objective(data, u) <= c.eigenvalue * (1 + 1e-12));
    }
}

TEST_CASE("components match the dense spectrum and stay orthonormal", "[pca]") {
    Rng rng(34);
    const Dataset data = oracle::random_dataset(10, 6, rng);
    const pca::PcaResult result = pca::components(data, 3);
    const oracle::EigenPairs ref = oracle::hermitian_eigen(oracle::covariance(rows_of(data)));
    REQUIRE(result.components.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK_THAT(result.eigenvalues[j], WithinRel(ref.values[j], 1e-9));
        CHECK_THAT(result.components[j].norm(), WithinAbs(1.0, 1e-12));
        for (std::size_t l = 0; l < j; ++l) {
            CHECK(std::abs(inner_product(result.components[j], result.components[l])) < 1e-10);
        }
        if (j > 0) {
            CHECK(result.eigenvalues[j] <= result.eigenvalues[j - 1]);
        }
    }
    // Energy accounting.
    double sum = result.residual_energy;
    for (double l : result.eigenvalues) {
        sum += l;
    }
    CHECK_THAT(sum, WithinRel(data.energy(), 1e-9));
    CHECK(result.rank_bound == 6);
}

TEST_CASE("components stop at the data rank", "[pca]") {
    // Two orthogonal directions in C^4.
    const Signal a{1.0, 0.0, 0.0, 0.0};
    const Signal b{0.0, 0.0, Complex(0, 1), 0.0};
    const Dataset data({3.0 * a, 2.0 * b, Complex(1, 1) * a + 0.5 * b});
    const pca::PcaResult result = pca::components(data, 4);
    CHECK(result.rank_bound == 2);
    CHECK(result.components.size() == 2);
    CHECK(result.residual_energy < 1e-12 * data.energy());

    // k = d on full-rank data: an orthonormal basis of the span.
    Rng rng(35);
    const Dataset full = oracle::random_dataset(7, 4, rng);
    const pca::PcaResult basis = pca::components(full, 4);
    REQUIRE(basis.components.size() == 4);
    for (const Signal& y : full) {
        double captured = 0.0;
        for (const Signal& q : basis.components) {
            captured += std::norm(inner_product(y, q));
        }
        CHECK_THAT(captured, WithinRel(y.energy(), 1e-10));
    }
    CHECK_THROWS_AS(pca::components(full, 0), InvalidArgument);
}

TEST_CASE("all-zero data is degenerate", "[pca]") {
    CHECK_THROWS_AS(pca::first_component(Dataset({Signal::zeros(3), Signal::zeros(3)})), DegenerateInput);
}

TEST_CASE("phase_normalize", "[pca]") {
    const std::vector<Complex> v{Complex(0, 1), 1.0};
    const std::vector<Complex> out = pca::phase_normalize(v);
    CHECK(out[0] == Complex(1.0, 0.0));
    CHECK(std::abs(out[1] - Complex(0, -1)) < 1e-15);

    const std::vector<Complex> positive{2.0, Complex(1, 1)};
    CHECK(pca::phase_normalize(positive) == positive);

    const std::vector<Complex> leading_zero{0.0, -2.0};
    const std::vector<Complex> fixed = pca::phase_normalize(leading_zero, 1e-10);
    CHECK(fixed[0] == Complex(0.0));
    CHECK(fixed[1] == Complex(2.0));

    Rng rng(36);
    const oracle::CVec r = oracle::random_vector(6, rng);
    const std::vector<Complex> once = pca::phase_normalize(r);
    CHECK(pca::phase_normalize(once) == once);

    CHECK_THROWS_AS(pca::phase_normalize(std::vector<Complex>{0.0, 0.0}), DegenerateInput);
}

TEST_CASE("objective is invariant under a global phase", "[pca]") {
    Rng rng(37);
    const Dataset data = oracle::random_dataset(6, 4, rng);
    const pca::Component c = pca::first_component(data);
    oracle::CVec q(c.vector.begin(), c.vector.end());
    const double before = objective(data, q);
    for (Complex& v : q) {
        v *= std::polar(1.0, 0.7);
    }
    CHECK_THAT(objective(data, q), WithinRel(before, 1e-13));
    CHECK_THAT(before, WithinRel(c.eigenvalue, 1e-12));
}
