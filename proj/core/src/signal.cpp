#include "qpca/signal.hpp"

#include "qpca/dft.hpp"
#include "qpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpca {
namespace {

std::size_t wrap(std::ptrdiff_t i, std::size_t n) noexcept {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    std::ptrdiff_t r = i % nn;
    if (r < 0) {
        r += nn;
    }
    return static_cast<std::size_t>(r);
}

double energy_of(std::span<const Complex> v) noexcept {
    double e = 0.0;
    for (const auto& c : v) {
        e += std::norm(c);
    }
    return e;
}

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw InvalidArgument(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                              std::to_string(b) + ")");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Signal

Signal::Signal(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidArgument("Signal: length must be at least 1");
    }
}

Signal::Signal(std::initializer_list<Complex> values) : Signal(std::vector<Complex>(values)) {}

Signal Signal::zeros(std::size_t n) { return Signal(std::vector<Complex>(n)); }

Signal Signal::unit(std::size_t n, std::ptrdiff_t j) {
    std::vector<Complex> v(n);
    if (n > 0) {
        v[wrap(j, n)] = 1.0;
    }
    return Signal(std::move(v));
}

const Complex& Signal::operator[](std::ptrdiff_t i) const noexcept { return values_[wrap(i, values_.size())]; }

double Signal::energy() const noexcept { return energy_of(values_); }

double Signal::norm() const noexcept { return std::sqrt(energy()); }

Signal operator+(const Signal& a, const Signal& b) {
    require_same_length(a.size(), b.size(), "operator+");
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.values()[i] + b.values()[i];
    }
    return Signal(std::move(out));
}

Signal operator-(const Signal& a, const Signal& b) {
    require_same_length(a.size(), b.size(), "operator-");
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.values()[i] - b.values()[i];
    }
    return Signal(std::move(out));
}

Signal operator*(Complex scale, const Signal& x) {
    std::vector<Complex> out(x.values().begin(), x.values().end());
    for (auto& c : out) {
        c *= scale;
    }
    return Signal(std::move(out));
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(std::vector<Complex> values, std::optional<std::size_t> symbol_count)
    : values_(std::move(values)), symbol_count_(symbol_count) {
    if (values_.empty()) {
        throw InvalidArgument("Spectrum: length must be at least 1");
    }
    if (symbol_count_ && (*symbol_count_ == 0 || values_.size() % *symbol_count_ != 0)) {
        throw InvalidArgument("Spectrum: symbol count " + std::to_string(*symbol_count_) +
                              " does not divide length " + std::to_string(values_.size()));
    }
}

const Complex& Spectrum::operator[](std::ptrdiff_t k) const noexcept { return values_[wrap(k, values_.size())]; }

double Spectrum::energy() const noexcept { return energy_of(values_); }

std::optional<std::size_t> Spectrum::oversampling() const noexcept {
    if (!symbol_count_) {
        return std::nullopt;
    }
    return values_.size() / *symbol_count_;
}

Spectrum Spectrum::with_factorization(std::size_t symbol_count) const { return Spectrum(values_, symbol_count); }

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::vector<Signal> vectors) : vectors_(std::move(vectors)) {
    for (const auto& v : vectors_) {
        if (v.size() != vectors_.front().size()) {
            throw InvalidArgument("Dataset: vectors must share a common length");
        }
    }
}

Dataset::Dataset(std::vector<Signal> vectors, Signal centroid) : Dataset(std::move(vectors)) {
    if (!vectors_.empty()) {
        require_same_length(centroid.size(), length(), "Dataset centroid");
    }
    centroid_ = std::move(centroid);
}

double Dataset::energy() const noexcept {
    double e = 0.0;
    for (const auto& v : vectors_) {
        e += v.energy();
    }
    return e;
}

// ---------------------------------------------------------------------------
// Operations

Signal circular_shift(const Signal& x, std::ptrdiff_t j) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[static_cast<std::ptrdiff_t>(i) - j];
    }
    return Signal(std::move(out));
}

Complex inner_product(std::span<const Complex> x, std::span<const Complex> y) {
    require_same_length(x.size(), y.size(), "inner_product");
    Complex acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * std::conj(y[i]);
    }
    return acc;
}

Complex inner_product(const Signal& x, const Signal& y) { return inner_product(x.values(), y.values()); }

Complex inner_product(const Spectrum& x, const Spectrum& y) { return inner_product(x.values(), y.values()); }

Signal autocorrelation(const Signal& x) {
    // R_x = sqrt(n) * idft(|x^|^2)
    auto spec = dft(x.values());
    const double scale = std::sqrt(static_cast<double>(x.size()));
    for (auto& c : spec) {
        c = std::norm(c) * scale;
    }
    return Signal(idft(spec));
}

std::vector<double> energy_spectrum(const Signal& x) {
    const auto r = autocorrelation(x);
    const auto rhat = dft(r.values());
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    const double bound = 1e-10 * (x.energy() + 1.0);
    std::vector<double> out(rhat.size());
    for (std::size_t k = 0; k < rhat.size(); ++k) {
        const Complex v = rhat[k] * scale;
        if (std::abs(v.imag()) > bound) {
            throw NumericalError("energy_spectrum: imaginary residue " + std::to_string(v.imag()) + " at bin " +
                                 std::to_string(k));
        }
        out[k] = v.real();
    }
    return out;
}

std::vector<Complex> coset_extract(const Spectrum& spectrum, std::size_t t, std::size_t symbol_count) {
    const std::size_t n = spectrum.size();
    if (symbol_count == 0 || n % symbol_count != 0) {
        throw InvalidArgument("coset_extract: N must divide n");
    }
    if (t >= symbol_count) {
        throw InvalidArgument("coset_extract: t out of range");
    }
    const std::size_t s = n / symbol_count;
    std::vector<Complex> out(s);
    for (std::size_t l = 0; l < s; ++l) {
        out[l] = spectrum.values()[t + l * symbol_count];
    }
    return out;
}

Spectrum coset_embed(std::span<const Complex> values, std::size_t t, std::size_t symbol_count, std::size_t n) {
    if (symbol_count == 0 || n % symbol_count != 0) {
        throw InvalidArgument("coset_embed: N must divide n");
    }
    if (t >= symbol_count) {
        throw InvalidArgument("coset_embed: t out of range");
    }
    const std::size_t s = n / symbol_count;
    require_same_length(values.size(), s, "coset_embed");
    std::vector<Complex> out(n);
    for (std::size_t l = 0; l < s; ++l) {
        out[t + l * symbol_count] = values[l];
    }
    return Spectrum(std::move(out), symbol_count);
}

ShiftOrthonormality check_shift_orthonormal(const Signal& x, std::size_t s, double tol) {
    const std::size_t n = x.size();
    if (s == 0 || n % s != 0) {
        throw InvalidArgument("check_shift_orthonormal: s must divide n");
    }
    const std::size_t symbols = n / s;
    ShiftOrthonormality result;

    // Time domain: R_x at multiples of s, evaluated from the defining sum.
    const auto v = x.values();
    for (std::size_t k = 0; k < symbols; ++k) {
        const std::size_t lag = k * s;
        Complex r{};
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + n - lag) % n;
            r += v[i] * std::conj(v[j]);
        }
        const double dev = (k == 0) ? std::abs(r - 1.0) : std::abs(r);
        result.time_deviation = std::max(result.time_deviation, dev);
    }

    // Frequency domain: every coset of the spectrum carries energy 1/N.
    const auto xhat = dft(v);
    const double target = 1.0 / static_cast<double>(symbols);
    for (std::size_t t = 0; t < symbols; ++t) {
        double e = 0.0;
        for (std::size_t l = 0; l < s; ++l) {
            e += std::norm(xhat[t + l * symbols]);
        }
        result.frequency_deviation = std::max(result.frequency_deviation, std::abs(e - target));
    }

    result.orthonormal = result.time_deviation <= tol;
    result.frequency_orthonormal = result.frequency_deviation <= tol;
    return result;
}

bool is_shift_orthonormal(const Signal& x, std::size_t s, double tol) {
    return check_shift_orthonormal(x, s, tol).orthonormal;
}

} // namespace qpca
