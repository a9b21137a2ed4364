#include "qpca/resample.hpp"

#include "qpca/error.hpp"
#include "qpca/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace qpca {
namespace {

void validate(const ResampleSpec& spec) {
    if (!(spec.s_tilde > 0.0) || !std::isfinite(spec.s_tilde)) {
        throw InvalidArgument("resample: s_tilde must be positive and finite");
    }
    if (spec.s_new == 0) {
        throw InvalidArgument("resample: s_new must be positive");
    }
}

// Weights w(j) = sinc(u - j) for j = 0..n-1. Uses
// sin(pi (u - j)) = (-1)^j sin(pi u) so only one sine is evaluated, and
// reduces u modulo 2 first so that integer u gives an exact Kronecker delta.
void sinc_weights(double u, std::span<double> out) {
    const double whole = std::floor(u);
    const double frac = u - whole;
    const std::size_t n = out.size();
    if (frac == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        if (whole >= 0.0 && whole < static_cast<double>(n)) {
            out[static_cast<std::size_t>(whole)] = 1.0;
        }
        return;
    }
    // sin(pi u) = (-1)^floor(u) sin(pi frac)
    double sin_pi_u = std::sin(std::numbers::pi * frac);
    if (std::fmod(std::fabs(whole), 2.0) == 1.0) {
        sin_pi_u = -sin_pi_u;
    }
    const double numerator = sin_pi_u / std::numbers::pi;
    for (std::size_t j = 0; j < n; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        out[j] = sign * numerator / (u - static_cast<double>(j));
    }
}

} // namespace

Complex sinc_eval(const Signal& y, double s_tilde, double t) {
    std::vector<double> w(y.size());
    sinc_weights(s_tilde * t, w);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        sum += y[static_cast<std::ptrdiff_t>(j)] * w[j];
    }
    return sum;
}

std::size_t resampled_length(std::size_t n, const ResampleSpec& spec) {
    validate(spec);
    const double periods = std::floor(static_cast<double>(n) / spec.s_tilde);
    return static_cast<std::size_t>(periods) * spec.s_new;
}

Dataset resample_dataset(const Dataset& data, const ResampleSpec& spec) {
    validate(spec);
    if (data.empty()) {
        throw InvalidArgument("resample: empty dataset");
    }
    const std::size_t n = data.length();
    const std::size_t out_length = resampled_length(n, spec);
    if (out_length == 0) {
        throw InvalidArgument("resample: input is shorter than one symbol period");
    }

    // The interpolation kernel is shared by every vector: row j holds the
    // weights for output time j / s_new. s_tilde * j is formed before the
    // division so that equal integer rates hit the grid exactly.
    std::vector<double> kernel(out_length * n);
    const double s_new = static_cast<double>(spec.s_new);
    parallel_for(out_length, spec.threads, [&](std::size_t j) {
        const double u = spec.s_tilde * static_cast<double>(j) / s_new;
        sinc_weights(u, std::span<double>(kernel.data() + j * n, n));
    });

    std::vector<Signal> out(data.size(), Signal::zeros(1));
    parallel_for(data.size(), spec.threads, [&](std::size_t i) {
        const std::span<const Complex> y = data[i].values();
        std::vector<Complex> values(out_length);
        for (std::size_t j = 0; j < out_length; ++j) {
            const double* w = kernel.data() + j * n;
            double re = 0.0;
            double im = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                re += w[l] * y[l].real();
                im += w[l] * y[l].imag();
            }
            values[j] = {re, im};
        }
        out[i] = Signal(std::move(values));
    });
    return Dataset(std::move(out));
}

} // namespace qpca
