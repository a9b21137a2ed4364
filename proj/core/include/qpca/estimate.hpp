#pragma once

#include "qpca/quasicyclic.hpp"
#include "qpca/signal.hpp"

#include <cstddef>
#include <vector>

namespace qpca {

struct PeriodSweepRow {
    std::size_t s = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double ratio = 0.0;  // lambda1 / lambda2, +infinity when lambda2 is negligible
    std::size_t n_used = 0;
};

struct PeriodSweep {
    std::vector<PeriodSweepRow> rows;  // ordered by s
    std::size_t best_s = 0;
};

/// Runs two-component QPCA for every s in [s_min, s_max] and picks the s that
/// maximizes lambda1 / lambda2. config.s and config.num_components are ignored.
/// Candidates run in parallel on config.threads; results do not depend on it.
PeriodSweep sweep_period(const Dataset& data, std::size_t s_min, std::size_t s_max, const QpcaConfig& config);

struct BandwidthEstimate {
    double s_estimate = 0.0;
    double band_fraction = 0.0;  // occupied share of the full band
};

/// Smallest window, centered on the circular centroid of the mean energy
/// spectrum, holding energy_threshold of the energy. s is estimated as the
/// reciprocal of its width relative to the full band.
BandwidthEstimate bandwidth_period_estimate(const Dataset& data, double energy_threshold = 0.95);

} // namespace qpca
