#pragma once

#include "qpca/linalg.hpp"
#include "qpca/signal.hpp"

#include <cstddef>
#include <vector>

namespace qpca::pca {

inline constexpr double kPhaseThreshold = 1e-10;

struct CenterResult {
    Signal centroid;
    Dataset centered;
};

/// Subtracts the mean vector from every member.
CenterResult center(const Dataset& data);

struct Component {
    Signal vector;      // unit norm, phase-normalized
    double eigenvalue;  // sum_i |<y_i, q>|^2
};

/// Unit-norm maximizer of sum_i |<y_i, q>|^2 over the data as given (no
/// centering is applied here).
Component first_component(const Dataset& data);

struct PcaResult {
    std::vector<Signal> components;
    std::vector<double> eigenvalues;  // non-increasing
    std::size_t rank_bound = 0;       // dimension of the span of the input
    double residual_energy = 0.0;     // energy left after the last deflation
};

/// Up to k principal components by repeated first_component + deflation.
/// Stops early once the residual energy drops below 1e-12 of the input energy.
PcaResult components(const Dataset& data, std::size_t k);

/// e^{i phi} v with phi chosen so the first entry whose magnitude exceeds
/// threshold * max|v| is real and positive.
std::vector<Complex> phase_normalize(std::span<const Complex> v, double threshold = kPhaseThreshold);
Signal phase_normalize(const Signal& v, double threshold = kPhaseThreshold);

namespace detail {

struct DenseComponents {
    std::vector<std::vector<Complex>> vectors;
    std::vector<double> eigenvalues;
    double residual_energy = 0.0;
};

/// Deflation PCA on the rows of `rows` (consumed as the residual workspace).
/// Each row counts with multiplicity `weight`, which scales eigenvalues only.
DenseComponents dense_components(linalg::Matrix rows, std::size_t k, double weight = 1.0);

/// Rank of the row span, by modified Gram-Schmidt with a relative cutoff.
std::size_t numerical_rank(const linalg::Matrix& rows, double relative_tolerance = 1e-10);

} // namespace detail

} // namespace qpca::pca
