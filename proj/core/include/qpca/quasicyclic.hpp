#pragma once

#include "qpca/signal.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qpca {

enum class PhasePolicy {
    LeadingReal,  // per coset, first non-negligible entry real and positive
    ZeroPhase,    // per coset phases chosen to minimize the imaginary energy of the pulse
};

enum class AugmentationRoute {
    // Within coset t every augmented copy of y^_i is y^_i times the constant
    // exp(-2 pi i j t / N), so the coset PCA runs on the m original coset
    // vectors with multiplicity N.
    Collapsed,
    // Materializes all m*N augmented spectra and runs PCA on them directly.
    Explicit,
};

struct QpcaConfig {
    std::size_t s = 1;               // samples per symbol
    std::size_t num_components = 1;  // k
    PhasePolicy phase_policy = PhasePolicy::LeadingReal;
    double tol = 1e-9;               // shift-orthonormality tolerance for outputs
    std::size_t threads = 1;         // 0 = all hardware threads
    AugmentationRoute route = AugmentationRoute::Collapsed;
};

struct QpcaResult {
    std::vector<Signal> components;   // q^(1..k), each of length n
    std::vector<Spectrum> spectra;    // dft of each component, factorized with N
    std::vector<double> lambdas;      // fraction of centered energy captured by each shift family
    // coset_eigenvalues[j][t]: PCA eigenvalue of coset t for component j, on the augmented data.
    std::vector<std::vector<double>> coset_eigenvalues;
    std::size_t symbols = 0;          // N
    std::size_t oversampling = 0;     // s
    std::size_t length = 0;           // n = N s
    Signal centroid = Signal::zeros(1);
    double total_energy = 0.0;        // sum_i ||y_i||^2 of the centered data
};

/// Truncates (or zero-pads) every vector to n = floor(n~ / s) * s.
Dataset extend_truncate(const Dataset& data, std::size_t s);

/// z^_{i,j}(k) = y^_i(k) exp(-2 pi i j k / N), returned at index i + m j.
std::vector<Spectrum> augment(std::span<const Spectrum> spectra, std::size_t symbol_count);

struct CosetSolution {
    std::vector<Complex> values;  // length s, squared norm 1/N
    double eigenvalue = 0.0;      // PCA eigenvalue on the augmented coset data
};

/// First principal direction of coset t + <N> of the augmented data, scaled
/// to squared norm 1/N. No centering is applied.
CosetSolution solve_coset(std::span<const Spectrum> augmented, std::size_t t, std::size_t symbol_count);

/// Quasicyclic PCA: families of s-shift-orthonormal pulses that capture the
/// most centered energy, one family per component.
QpcaResult quasicyclic_pca(const Dataset& data, const QpcaConfig& config);

/// c_j = <y, q * e_{js}> for j = 0..N-1.
std::vector<Complex> family_coefficients(const Signal& y, const Signal& q, std::size_t s);

/// Orthogonal projection of y onto span{q * e_{js}}. Throws InvalidArgument
/// if q is not s-shift-orthonormal within tol.
Signal project_family(const Signal& y, const Signal& q, std::size_t s, double tol = 1e-9);

/// sum_i ||project_family(y_i, q, s)||^2 / sum_i ||y_i||^2.
double energy_fraction(const Dataset& data, const Signal& q, std::size_t s, double tol = 1e-9);

/// Multiplies coset t + <N> of the spectrum by exp(i phases[t]).
Spectrum rotate_cosets(const Spectrum& spectrum, std::span<const double> phases);

} // namespace qpca
