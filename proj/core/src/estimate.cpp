#include "qpca/estimate.hpp"

#include "qpca/dft.hpp"
#include "qpca/error.hpp"
#include "qpca/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace qpca {
namespace {

constexpr double kNegligibleLambda = 1e-12;

} // namespace

PeriodSweep sweep_period(const Dataset& data, std::size_t s_min, std::size_t s_max, const QpcaConfig& config) {
    if (data.empty()) {
        throw InvalidArgument("sweep_period: empty dataset");
    }
    if (s_min < 1 || s_min > s_max || s_max > data.length()) {
        throw InvalidArgument("sweep_period: need 1 <= s_min <= s_max <= " + std::to_string(data.length()));
    }
    const std::size_t count = s_max - s_min + 1;
    PeriodSweep sweep;
    sweep.rows.resize(count);

    // Parallelism goes across candidates; each QPCA run is sequential.
    QpcaConfig inner = config;
    inner.num_components = 2;
    inner.threads = 1;
    parallel_for(count, config.threads, [&](std::size_t index) {
        QpcaConfig local = inner;
        local.s = s_min + index;
        const QpcaResult result = quasicyclic_pca(data, local);
        PeriodSweepRow& row = sweep.rows[index];
        row.s = local.s;
        row.n_used = result.length;
        row.lambda1 = result.lambdas.at(0);
        row.lambda2 = result.lambdas.size() > 1 ? result.lambdas[1] : 0.0;
        row.ratio = row.lambda2 < kNegligibleLambda ? std::numeric_limits<double>::infinity()
                                                    : row.lambda1 / row.lambda2;
    });

    // Strict comparison: ties, including infinite ratios, go to the smallest s.
    const PeriodSweepRow* best = &sweep.rows.front();
    for (const PeriodSweepRow& row : sweep.rows) {
        if (row.ratio > best->ratio) {
            best = &row;
        }
    }
    sweep.best_s = best->s;
    return sweep;
}

BandwidthEstimate bandwidth_period_estimate(const Dataset& data, double energy_threshold) {
    if (!(energy_threshold > 0.0 && energy_threshold < 1.0)) {
        throw InvalidArgument("bandwidth_period_estimate: threshold must lie in (0, 1)");
    }
    if (data.empty()) {
        throw InvalidArgument("bandwidth_period_estimate: empty dataset");
    }
    const std::size_t n = data.length();
    std::vector<double> spectrum(n, 0.0);
    for (const Signal& y : data) {
        const std::vector<Complex> y_hat = dft(y.values());
        for (std::size_t k = 0; k < n; ++k) {
            spectrum[k] += std::norm(y_hat[k]);
        }
    }
    const double total = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
    if (!(total > 0.0)) {
        throw DegenerateInput("bandwidth_period_estimate: data has zero energy");
    }

    Complex moment = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        moment += spectrum[k] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    const double center = std::arg(moment) / (2.0 * std::numbers::pi) * static_cast<double>(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> distance(n);
    for (std::size_t k = 0; k < n; ++k) {
        double d = std::fmod(std::fabs(static_cast<double>(k) - center), static_cast<double>(n));
        distance[k] = std::min(d, static_cast<double>(n) - d);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return distance[a] < distance[b]; });

    double captured = 0.0;
    std::size_t width = 0;
    for (std::size_t k : order) {
        captured += spectrum[k];
        ++width;
        if (captured >= energy_threshold * total) {
            break;
        }
    }
    BandwidthEstimate out;
    out.band_fraction = static_cast<double>(width) / static_cast<double>(n);
    out.s_estimate = 1.0 / out.band_fraction;
    return out;
}

} // namespace qpca
