#include "qpca/dft.hpp"

#include "qpca/error.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace qpca {
namespace {

// Prime factors above this are handled by Bluestein instead of an O(p^2)
// generic butterfly.
constexpr std::size_t kMaxGenericRadix = 67;

// exp(-2 pi i k / n), with k reduced first so the angle stays in [0, 2 pi).
Complex unit_root(std::size_t k, std::size_t n) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<std::size_t> factorize(std::size_t n) {
    // (radix, remaining) pairs in the order used by the recursion.
    std::vector<std::size_t> factors;
    std::size_t p = 4;
    const auto floor_sqrt = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    do {
        while (n % p != 0) {
            switch (p) {
            case 4: p = 2; break;
            case 2: p = 3; break;
            default: p += 2; break;
            }
            if (p > floor_sqrt) {
                p = n;
            }
        }
        n /= p;
        factors.push_back(p);
        factors.push_back(n);
    } while (n > 1);
    return factors;
}

std::size_t largest_radix(const std::vector<std::size_t>& factors) {
    std::size_t m = 1;
    for (std::size_t i = 0; i < factors.size(); i += 2) {
        m = std::max(m, factors[i]);
    }
    return m;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

} // namespace

struct FftPlan::Bluestein {
    std::size_t padded = 0;
    std::shared_ptr<const FftPlan> inner;
    std::vector<Complex> chirp;         // exp(-i pi k^2 / n)
    std::vector<Complex> kernel_hat;    // FFT of the conjugate chirp, wrapped to length `padded`
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) {
        throw InvalidArgument("FftPlan: length must be positive");
    }
    if (n == 1) {
        return;
    }
    factors_ = factorize(n);
    if (largest_radix(factors_) > kMaxGenericRadix) {
        factors_.clear();
        auto b = std::make_unique<Bluestein>();
        b->padded = next_pow2(2 * n - 1);
        b->inner = fft_plan(b->padded);
        b->chirp.resize(n);
        const std::size_t two_n = 2 * n;
        // k^2 mod 2n keeps the angle argument small and exact; it is updated
        // incrementally via (k + 1)^2 = k^2 + 2k + 1.
        std::size_t k2 = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) {
                k2 = (k2 + 2 * k - 1) % two_n;
            }
            const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
            b->chirp[k] = {std::cos(angle), std::sin(angle)};
        }
        std::vector<Complex> kernel(b->padded);
        kernel[0] = std::conj(b->chirp[0]);
        for (std::size_t k = 1; k < n; ++k) {
            kernel[k] = std::conj(b->chirp[k]);
            kernel[b->padded - k] = std::conj(b->chirp[k]);
        }
        b->kernel_hat.resize(b->padded);
        b->inner->forward(kernel, b->kernel_hat);
        bluestein_ = std::move(b);
        return;
    }
    twiddles_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        twiddles_[k] = unit_root(k, n);
    }
}

FftPlan::~FftPlan() = default;

void FftPlan::work(Complex* out, const Complex* in, std::size_t fstride, const std::size_t* factors,
                   Complex* scratch) const {
    Complex* const out_begin = out;
    const std::size_t p = factors[0];
    const std::size_t m = factors[1];
    Complex* const out_end = out + p * m;

    if (m == 1) {
        do {
            *out = *in;
            in += fstride;
        } while (++out != out_end);
    } else {
        do {
            work(out, in, fstride * p, factors + 2, scratch);
            in += fstride;
        } while ((out += m) != out_end);
    }
    out = out_begin;

    const Complex* tw = twiddles_.data();
    switch (p) {
    case 2: {
        Complex* out2 = out + m;
        for (std::size_t k = 0; k < m; ++k) {
            const Complex t = out2[k] * tw[k * fstride];
            out2[k] = out[k] - t;
            out[k] += t;
        }
        break;
    }
    case 4: {
        const std::size_t m2 = 2 * m;
        const std::size_t m3 = 3 * m;
        for (std::size_t k = 0; k < m; ++k) {
            const Complex s0 = out[k + m] * tw[k * fstride];
            const Complex s1 = out[k + m2] * tw[2 * k * fstride];
            const Complex s2 = out[k + m3] * tw[3 * k * fstride];
            const Complex s5 = out[k] - s1;
            const Complex a = out[k] + s1;
            const Complex s3 = s0 + s2;
            const Complex s4 = s0 - s2;
            out[k + m2] = a - s3;
            out[k] = a + s3;
            out[k + m] = {s5.real() + s4.imag(), s5.imag() - s4.real()};
            out[k + m3] = {s5.real() - s4.imag(), s5.imag() + s4.real()};
        }
        break;
    }
    default: {
        for (std::size_t u = 0; u < m; ++u) {
            std::size_t k = u;
            for (std::size_t q1 = 0; q1 < p; ++q1) {
                scratch[q1] = out[k];
                k += m;
            }
            k = u;
            for (std::size_t q1 = 0; q1 < p; ++q1) {
                std::size_t twidx = 0;
                Complex acc = scratch[0];
                for (std::size_t q = 1; q < p; ++q) {
                    twidx += fstride * k;
                    if (twidx >= n_) {
                        twidx %= n_;
                    }
                    acc += scratch[q] * tw[twidx];
                }
                out[k] = acc;
                k += m;
            }
        }
        break;
    }
    }
}

void FftPlan::mixed_radix(const Complex* in, Complex* out) const {
    std::vector<Complex> scratch(largest_radix(factors_));
    work(out, in, 1, factors_.data(), scratch.data());
}

void FftPlan::forward(std::span<const Complex> in, std::span<Complex> out) const {
    if (in.size() != n_ || out.size() != n_) {
        throw InvalidArgument("FftPlan::forward: buffer length does not match plan");
    }
    if (n_ == 1) {
        out[0] = in[0];
        return;
    }
    if (!bluestein_) {
        if (in.data() == out.data()) {
            std::vector<Complex> copy(in.begin(), in.end());
            mixed_radix(copy.data(), out.data());
        } else {
            mixed_radix(in.data(), out.data());
        }
        return;
    }
    const auto& b = *bluestein_;
    std::vector<Complex> a(b.padded);
    for (std::size_t k = 0; k < n_; ++k) {
        a[k] = in[k] * b.chirp[k];
    }
    std::vector<Complex> ahat(b.padded);
    b.inner->forward(a, ahat);
    for (std::size_t k = 0; k < b.padded; ++k) {
        ahat[k] *= b.kernel_hat[k];
    }
    b.inner->backward(ahat, a);
    const double scale = 1.0 / static_cast<double>(b.padded);
    for (std::size_t k = 0; k < n_; ++k) {
        out[k] = a[k] * b.chirp[k] * scale;
    }
}

void FftPlan::backward(std::span<const Complex> in, std::span<Complex> out) const {
    // conj(F(conj(x))) flips the exponent sign.
    std::vector<Complex> tmp(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        tmp[i] = std::conj(in[i]);
    }
    forward(tmp, out);
    for (auto& c : out) {
        c = std::conj(c);
    }
}

std::shared_ptr<const FftPlan> fft_plan(std::size_t n) {
    static std::mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) {
            return it->second;
        }
    }
    // Built outside the lock: Bluestein plans recurse into fft_plan.
    auto plan = std::make_shared<const FftPlan>(n);
    std::lock_guard lock(mutex);
    return cache.try_emplace(n, std::move(plan)).first->second;
}

std::vector<Complex> dft(std::span<const Complex> x) {
    std::vector<Complex> out(x.size());
    fft_plan(x.size())->forward(x, out);
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& c : out) {
        c *= scale;
    }
    return out;
}

std::vector<Complex> idft(std::span<const Complex> x) {
    std::vector<Complex> out(x.size());
    fft_plan(x.size())->backward(x, out);
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& c : out) {
        c *= scale;
    }
    return out;
}

Spectrum dft(const Signal& x) { return Spectrum(dft(x.values())); }

Signal idft(const Spectrum& x) { return Signal(idft(x.values())); }

} // namespace qpca
