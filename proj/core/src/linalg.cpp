#include "qpca/linalg.hpp"

#include "qpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qpca::linalg {
namespace {

constexpr std::uint64_t kStartSeed = 0x51C0FFEEULL;
constexpr std::size_t kMaxJacobiSweeps = 100;

double off_diagonal_norm2(const Matrix& a) {
    double off = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (i != j) {
                off += std::norm(a(i, j));
            }
        }
    }
    return off;
}

double frobenius2(const Matrix& a) {
    double f = 0.0;
    for (const auto& c : a.data) {
        f += std::norm(c);
    }
    return f;
}

void matvec(const Matrix& a, std::span<const Complex> v, std::span<Complex> out) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        Complex acc{};
        const auto r = a.row(i);
        for (std::size_t j = 0; j < a.cols; ++j) {
            acc += r[j] * v[j];
        }
        out[i] = acc;
    }
}

double norm(std::span<const Complex> v) {
    double e = 0.0;
    for (const auto& c : v) {
        e += std::norm(c);
    }
    return std::sqrt(e);
}

double rayleigh(const Matrix& a, std::span<const Complex> v, std::span<Complex> work) {
    matvec(a, v, work);
    Complex acc{};
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += std::conj(v[i]) * work[i];
    }
    return acc.real();
}

} // namespace

HermitianEigen hermitian_eigen(const Matrix& input) {
    if (input.rows != input.cols) {
        throw InvalidArgument("hermitian_eigen: matrix must be square");
    }
    const std::size_t n = input.rows;
    Matrix a = input;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }

    const double scale2 = frobenius2(a);
    const double stop = 1e-30 * scale2;
    for (std::size_t sweep = 0; sweep < kMaxJacobiSweeps && off_diagonal_norm2(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) {
                    continue;
                }
                // U = diag(1, e^{-i theta}) * [[c, s], [-s, c]] makes the pivot real, then zeroes it.
                const Complex phase = std::conj(apq) / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = 0.5 * std::atan2(2.0 * r, aqq - app);
                const double c = std::cos(phi);
                const double s = std::sin(phi);
                const Complex upp = c;
                const Complex upq = s;
                const Complex uqp = -s * phase;
                const Complex uqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if (off_diagonal_norm2(a) > 1e-20 * std::max(scale2, 1e-300)) {
        throw NumericalError("hermitian_eigen: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    HermitianEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, j) = v(i, order[j]);
        }
    }
    return out;
}

PowerIterationResult power_iteration(const Matrix& a, const PowerIterationOptions& options) {
    if (a.rows != a.cols || a.rows == 0) {
        throw InvalidArgument("power_iteration: matrix must be square and non-empty");
    }
    const std::size_t n = a.rows;

    std::vector<Complex> v(n);
    {
        std::mt19937_64 engine(kStartSeed);
        const double base = 1.0 / std::sqrt(static_cast<double>(n));
        for (auto& c : v) {
            const double re = static_cast<double>(engine() >> 11) * 0x1.0p-53 - 0.5;
            const double im = static_cast<double>(engine() >> 11) * 0x1.0p-53 - 0.5;
            c = Complex(base, 0.0) + 0.5 * base * Complex(re, im);
        }
        const double nv = norm(v);
        for (auto& c : v) {
            c /= nv;
        }
    }

    PowerIterationResult result;
    std::vector<Complex> w(n);
    double previous = 0.0;
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        matvec(a, v, w);
        Complex rq{};
        for (std::size_t i = 0; i < n; ++i) {
            rq += std::conj(v[i]) * w[i];
        }
        const double nw = norm(w);
        result.iterations = it;
        if (nw == 0.0) {
            result.vector = v;
            result.value = 0.0;
            result.converged = true;
            return result;
        }
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = w[i] / nw;
        }
        const double value = rq.real();
        if (it > 1 && std::abs(value - previous) <= options.relative_tolerance * std::abs(value)) {
            result.converged = true;
            break;
        }
        previous = value;
    }
    result.value = rayleigh(a, v, w);
    result.vector = std::move(v);
    return result;
}

} // namespace qpca::linalg
