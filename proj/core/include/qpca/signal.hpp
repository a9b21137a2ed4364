#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qpca {

using Complex = std::complex<double>;

/// Finite complex sequence of fixed length n >= 1, indexed modulo n.
class Signal {
public:
    explicit Signal(std::vector<Complex> values);
    Signal(std::initializer_list<Complex> values);

    static Signal zeros(std::size_t n);
    /// Standard basis vector e_j; j is reduced modulo n.
    static Signal unit(std::size_t n, std::ptrdiff_t j);
    static Signal delta(std::size_t n) { return unit(n, 0); }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    /// Element i mod n; negative i allowed.
    [[nodiscard]] const Complex& operator[](std::ptrdiff_t i) const noexcept;
    [[nodiscard]] std::span<const Complex> values() const noexcept { return values_; }
    [[nodiscard]] double energy() const noexcept;
    [[nodiscard]] double norm() const noexcept;

    [[nodiscard]] auto begin() const noexcept { return values_.cbegin(); }
    [[nodiscard]] auto end() const noexcept { return values_.cend(); }

    friend bool operator==(const Signal&, const Signal&) = default;

private:
    std::vector<Complex> values_;
};

Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);
Signal operator*(Complex scale, const Signal& x);

/// DFT-domain sequence. Optionally carries the factorization n = N * s that
/// defines the cosets t + <N> = {t, t + N, ..., t + (s - 1) N}.
class Spectrum {
public:
    explicit Spectrum(std::vector<Complex> values, std::optional<std::size_t> symbol_count = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const Complex& operator[](std::ptrdiff_t k) const noexcept;
    [[nodiscard]] std::span<const Complex> values() const noexcept { return values_; }
    [[nodiscard]] double energy() const noexcept;

    /// N, when a factorization is attached.
    [[nodiscard]] std::optional<std::size_t> symbol_count() const noexcept { return symbol_count_; }
    /// s = n / N, when a factorization is attached.
    [[nodiscard]] std::optional<std::size_t> oversampling() const noexcept;
    [[nodiscard]] Spectrum with_factorization(std::size_t symbol_count) const;

    [[nodiscard]] auto begin() const noexcept { return values_.cbegin(); }
    [[nodiscard]] auto end() const noexcept { return values_.cend(); }

private:
    std::vector<Complex> values_;
    std::optional<std::size_t> symbol_count_;
};

/// Ordered collection of equal-length signals plus centering state.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Signal> vectors);
    Dataset(std::vector<Signal> vectors, Signal centroid);

    [[nodiscard]] std::size_t size() const noexcept { return vectors_.size(); }
    [[nodiscard]] bool empty() const noexcept { return vectors_.empty(); }
    /// Common vector length n (0 for an empty dataset).
    [[nodiscard]] std::size_t length() const noexcept { return vectors_.empty() ? 0 : vectors_.front().size(); }
    [[nodiscard]] const Signal& operator[](std::size_t i) const { return vectors_.at(i); }
    [[nodiscard]] std::span<const Signal> vectors() const noexcept { return vectors_; }
    [[nodiscard]] bool centered() const noexcept { return centroid_.has_value(); }
    [[nodiscard]] const std::optional<Signal>& centroid() const noexcept { return centroid_; }
    [[nodiscard]] double energy() const noexcept;

    [[nodiscard]] auto begin() const noexcept { return vectors_.cbegin(); }
    [[nodiscard]] auto end() const noexcept { return vectors_.cend(); }

private:
    std::vector<Signal> vectors_;
    std::optional<Signal> centroid_;
};

/// (x * e_j)(i) = x(i - j).
Signal circular_shift(const Signal& x, std::ptrdiff_t j);

/// <x, y> = sum_i x(i) conj(y(i)).
Complex inner_product(std::span<const Complex> x, std::span<const Complex> y);
Complex inner_product(const Signal& x, const Signal& y);
Complex inner_product(const Spectrum& x, const Spectrum& y);

/// R_x(j) = sum_i x(i) conj(x(i - j)), 0 <= j < n.
Signal autocorrelation(const Signal& x);

/// S_x = dft(R_x) / sqrt(n); equals |dft(x)|^2 elementwise.
std::vector<double> energy_spectrum(const Signal& x);

/// Entries t, t + N, ..., t + (s - 1) N of a length-n spectrum.
std::vector<Complex> coset_extract(const Spectrum& spectrum, std::size_t t, std::size_t symbol_count);
/// Inverse of coset_extract: a length-n spectrum that is zero off the coset.
Spectrum coset_embed(std::span<const Complex> values, std::size_t t, std::size_t symbol_count, std::size_t n);

struct ShiftOrthonormality {
    bool orthonormal = false;          // verdict of the time-domain test
    double time_deviation = 0.0;       // max(|R_x(0) - 1|, max_{k != 0} |R_x(ks)|)
    bool frequency_orthonormal = false;
    double frequency_deviation = 0.0;  // max_t | ||x^_{t+<N>}||^2 - 1/N |
};

/// Tests whether x is orthonormal to its circular shifts by nonzero multiples
/// of s, both directly and through the per-coset energy characterization.
ShiftOrthonormality check_shift_orthonormal(const Signal& x, std::size_t s, double tol);
bool is_shift_orthonormal(const Signal& x, std::size_t s, double tol);

} // namespace qpca
