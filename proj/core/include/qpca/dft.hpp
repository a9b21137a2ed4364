#pragma once

#include "qpca/signal.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qpca {

/// Precomputed O(n log n) transform of one length. Mixed radix for lengths
/// whose prime factors are small, Bluestein otherwise.
///
/// Computes the unnormalized forward sum X(k) = sum_i x(i) exp(-2 pi i ik / n)
/// or its conjugate-exponent counterpart. Plans are immutable and may be shared
/// between threads.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    void forward(std::span<const Complex> in, std::span<Complex> out) const;
    void backward(std::span<const Complex> in, std::span<Complex> out) const;

private:
    struct Bluestein;

    void mixed_radix(const Complex* in, Complex* out) const;
    void work(Complex* out, const Complex* in, std::size_t fstride, const std::size_t* factors, Complex* scratch) const;

    std::size_t n_;
    std::vector<std::size_t> factors_;  // (radix, remaining length) pairs
    std::vector<Complex> twiddles_;
    std::unique_ptr<Bluestein> bluestein_;
};

/// Shared plan for length n, built on first use.
std::shared_ptr<const FftPlan> fft_plan(std::size_t n);

/// Unitary DFT: x^(k) = n^{-1/2} sum_i x(i) w_n^{-ik}, w_n = exp(2 pi i / n).
std::vector<Complex> dft(std::span<const Complex> x);
/// Inverse of the unitary DFT.
std::vector<Complex> idft(std::span<const Complex> x);

Spectrum dft(const Signal& x);
Signal idft(const Spectrum& x);

} // namespace qpca
