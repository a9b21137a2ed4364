#pragma once

#include "qpca/signal.hpp"

#include <cstddef>

namespace qpca {

struct ResampleSpec {
    double s_tilde = 1.0;   // original samples per symbol period
    std::size_t s_new = 1;  // target samples per symbol period
    std::size_t threads = 1;
};

/// Y(t) = sum_{j=0}^{n-1} y(j) sinc(s_tilde t - j), t in symbol periods.
Complex sinc_eval(const Signal& y, double s_tilde, double t);

/// Number of output samples: floor(n / s_tilde) * s_new.
std::size_t resampled_length(std::size_t n, const ResampleSpec& spec);

/// y'_i(j) = Y_i(j / s_new) for j = 0 .. resampled_length - 1. Samples are
/// taken over the same time span; outside 0..n-1 the input is treated as zero.
Dataset resample_dataset(const Dataset& data, const ResampleSpec& spec);

} // namespace qpca
