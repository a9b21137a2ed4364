#include "qpca/pca.hpp"

#include "qpca/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpca::pca {
namespace {

using linalg::Matrix;

constexpr double kResidualCutoff = 1e-12;

double energy(const Matrix& rows) {
    double e = 0.0;
    for (const auto& c : rows.data) {
        e += std::norm(c);
    }
    return e;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
    Complex acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * std::conj(y[i]);
    }
    return acc;
}

double vector_norm(std::span<const Complex> v) {
    double e = 0.0;
    for (const auto& c : v) {
        e += std::norm(c);
    }
    return std::sqrt(e);
}

// Dominant eigenvector of the sample Gram operator, computed on whichever of
// Y^H Y (n x n) or Y Y^H (m x m) is smaller.
std::vector<Complex> dominant_direction(const Matrix& rows) {
    const std::size_t m = rows.rows;
    const std::size_t n = rows.cols;
    const bool column_gram = n <= m;
    const std::size_t d = column_gram ? n : m;

    Matrix gram(d, d);
    if (column_gram) {
        // C = sum_i y_i y_i^H
        for (std::size_t i = 0; i < m; ++i) {
            const auto y = rows.row(i);
            for (std::size_t a = 0; a < n; ++a) {
                const Complex ya = y[a];
                if (ya == Complex{}) {
                    continue;
                }
                for (std::size_t b = a; b < n; ++b) {
                    gram(a, b) += ya * std::conj(y[b]);
                }
            }
        }
    } else {
        // K_ij = y_i^H y_j
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                gram(i, j) = dot(rows.row(j), rows.row(i));
            }
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        gram(a, a) = gram(a, a).real();
        for (std::size_t b = a + 1; b < d; ++b) {
            gram(b, a) = std::conj(gram(a, b));
        }
    }

    std::vector<Complex> top;
    auto power = linalg::power_iteration(gram);
    if (power.converged) {
        top = std::move(power.vector);
    } else {
        const auto eig = linalg::hermitian_eigen(gram);
        top.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            top[i] = eig.vectors(i, 0);
        }
    }

    if (column_gram) {
        return top;
    }
    std::vector<Complex> q(n);
    for (std::size_t j = 0; j < m; ++j) {
        const auto y = rows.row(j);
        for (std::size_t a = 0; a < n; ++a) {
            q[a] += top[j] * y[a];
        }
    }
    return q;
}

Matrix to_rows(const Dataset& data) {
    Matrix rows(data.size(), data.length());
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::copy(data[i].begin(), data[i].end(), rows.row(i).begin());
    }
    return rows;
}

} // namespace

CenterResult center(const Dataset& data) {
    if (data.empty()) {
        throw InvalidArgument("center: empty dataset");
    }
    const std::size_t n = data.length();
    std::vector<Complex> mean(n);
    for (const auto& x : data) {
        for (std::size_t i = 0; i < n; ++i) {
            mean[i] += x.values()[i];
        }
    }
    const double inv_m = 1.0 / static_cast<double>(data.size());
    for (auto& c : mean) {
        c *= inv_m;
    }
    std::vector<Signal> centered;
    centered.reserve(data.size());
    for (const auto& x : data) {
        std::vector<Complex> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = x.values()[i] - mean[i];
        }
        centered.emplace_back(std::move(y));
    }
    Signal centroid(std::move(mean));
    Dataset out(std::move(centered), centroid);
    return {std::move(centroid), std::move(out)};
}

std::vector<Complex> phase_normalize(std::span<const Complex> v, double threshold) {
    double largest = 0.0;
    for (const auto& c : v) {
        largest = std::max(largest, std::abs(c));
    }
    if (largest == 0.0) {
        throw DegenerateInput("phase_normalize: zero vector");
    }
    std::vector<Complex> out(v.begin(), v.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double mag = std::abs(out[i]);
        if (mag > threshold * largest) {
            const Complex rotation = std::conj(out[i]) / mag;
            for (auto& c : out) {
                c *= rotation;
            }
            out[i] = mag;
            break;
        }
    }
    return out;
}

Signal phase_normalize(const Signal& v, double threshold) { return Signal(phase_normalize(v.values(), threshold)); }

namespace detail {

DenseComponents dense_components(Matrix rows, std::size_t k, double weight) {
    if (k < 1) {
        throw InvalidArgument("components: k must be at least 1");
    }
    const double initial = energy(rows);
    if (initial == 0.0 || !std::isfinite(initial)) {
        throw DegenerateInput("pca: data has no energy");
    }

    DenseComponents out;
    const std::size_t limit = std::min(k, rows.cols);
    for (std::size_t j = 0; j < limit; ++j) {
        if (j > 0 && energy(rows) < kResidualCutoff * initial) {
            break;
        }
        auto q = dominant_direction(rows);
        // Re-orthogonalize against earlier components; deflation leaves them
        // in the null space only up to rounding.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& prev : out.vectors) {
                const Complex c = dot(q, prev);
                for (std::size_t a = 0; a < q.size(); ++a) {
                    q[a] -= c * prev[a];
                }
            }
        }
        const double nq = vector_norm(q);
        if (nq == 0.0 || !std::isfinite(nq)) {
            break;
        }
        for (auto& c : q) {
            c /= nq;
        }
        q = phase_normalize(q);

        double captured = 0.0;
        for (std::size_t i = 0; i < rows.rows; ++i) {
            auto y = rows.row(i);
            const Complex c = dot(y, q);
            captured += std::norm(c);
            for (std::size_t a = 0; a < q.size(); ++a) {
                y[a] -= c * q[a];
            }
        }
        out.vectors.push_back(std::move(q));
        out.eigenvalues.push_back(weight * captured);
    }
    out.residual_energy = weight * energy(rows);
    return out;
}

std::size_t numerical_rank(const Matrix& rows, double relative_tolerance) {
    double largest = 0.0;
    for (std::size_t i = 0; i < rows.rows; ++i) {
        largest = std::max(largest, vector_norm(rows.row(i)));
    }
    if (largest == 0.0) {
        return 0;
    }
    std::vector<std::vector<Complex>> basis;
    for (std::size_t i = 0; i < rows.rows && basis.size() < rows.cols; ++i) {
        std::vector<Complex> r(rows.row(i).begin(), rows.row(i).end());
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const Complex c = dot(r, b);
                for (std::size_t a = 0; a < r.size(); ++a) {
                    r[a] -= c * b[a];
                }
            }
        }
        const double nr = vector_norm(r);
        if (nr > relative_tolerance * largest) {
            for (auto& c : r) {
                c /= nr;
            }
            basis.push_back(std::move(r));
        }
    }
    return basis.size();
}

} // namespace detail

Component first_component(const Dataset& data) {
    if (data.empty()) {
        throw InvalidArgument("first_component: empty dataset");
    }
    auto dense = detail::dense_components(to_rows(data), 1);
    return {Signal(std::move(dense.vectors.front())), dense.eigenvalues.front()};
}

PcaResult components(const Dataset& data, std::size_t k) {
    if (k < 1) {
        throw InvalidArgument("components: k must be at least 1");
    }
    if (data.empty()) {
        throw InvalidArgument("components: empty dataset");
    }
    auto rows = to_rows(data);
    PcaResult result;
    result.rank_bound = detail::numerical_rank(rows);
    auto dense = detail::dense_components(std::move(rows), k);
    for (auto& v : dense.vectors) {
        result.components.emplace_back(std::move(v));
    }
    result.eigenvalues = std::move(dense.eigenvalues);
    result.residual_energy = dense.residual_energy;
    return result;
}

} // namespace qpca::pca
