#pragma once

#include "qpca/signal.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qpca::linalg {

/// Dense row-major complex matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<Complex> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const Complex> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order;
/// column j of `vectors` belongs to `values[j]`.
struct HermitianEigen {
    std::vector<double> values;
    Matrix vectors;
};

/// Cyclic complex Jacobi. Intended for the small matrices met here.
HermitianEigen hermitian_eigen(const Matrix& a);

struct PowerIterationResult {
    std::vector<Complex> vector;  // unit norm
    double value = 0.0;           // Rayleigh quotient
    std::size_t iterations = 0;
    bool converged = false;
};

struct PowerIterationOptions {
    double relative_tolerance = 1e-13;
    std::size_t max_iterations = 10000;
};

/// Dominant eigenpair of a positive semidefinite Hermitian matrix. Stops when
/// the Rayleigh quotient changes by less than relative_tolerance. The start
/// vector is the normalized all-ones vector plus a fixed-seed perturbation.
PowerIterationResult power_iteration(const Matrix& a, const PowerIterationOptions& options = {});

} // namespace qpca::linalg
