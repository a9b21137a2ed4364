#include "qpca/quasicyclic.hpp"

#include "qpca/dft.hpp"
#include "qpca/error.hpp"
#include "qpca/linalg.hpp"
#include "qpca/parallel.hpp"
#include "qpca/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qpca {
namespace {

// Components whose total coset eigenvalue falls below this fraction of the
// augmented energy are considered absent.
constexpr double kRankCutoff = 1e-12;

std::size_t checked_symbol_count(std::size_t n, std::size_t s, const char* where) {
    if (s == 0) {
        throw InvalidArgument(std::string(where) + ": s must be positive");
    }
    if (n % s != 0) {
        throw InvalidArgument(std::string(where) + ": s must divide the signal length");
    }
    return n / s;
}

// b(t) = sum_l y^(t + lN) conj(q^(t + lN)).
std::vector<Complex> coset_correlation(std::span<const Complex> y_hat, std::span<const Complex> q_hat,
                                       std::size_t symbols) {
    std::vector<Complex> b(symbols);
    for (std::size_t k = 0; k < y_hat.size(); ++k) {
        b[k % symbols] += y_hat[k] * std::conj(q_hat[k]);
    }
    return b;
}

double captured_energy(std::span<const Complex> y_hat, std::span<const Complex> q_hat, std::size_t symbols) {
    double sum = 0.0;
    for (const Complex& v : coset_correlation(y_hat, q_hat, symbols)) {
        sum += std::norm(v);
    }
    return static_cast<double>(symbols) * sum;
}

void require_orthonormal(const Signal& q, std::size_t s, double tol, const char* where) {
    const ShiftOrthonormality check = check_shift_orthonormal(q, s, tol);
    if (!check.orthonormal) {
        throw InvalidArgument(std::string(where) + ": pulse is not shift-orthonormal (deviation " +
                              std::to_string(check.time_deviation) + ")");
    }
}

// Extends `vectors` (each of length s, mutually orthonormal) to `count`
// orthonormal vectors using standard basis candidates.
void complete_basis(std::vector<std::vector<Complex>>& vectors, std::size_t count, std::size_t s) {
    for (std::size_t e = 0; e < s && vectors.size() < count; ++e) {
        std::vector<Complex> v(s);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : vectors) {
                const Complex c = inner_product(v, u);
                for (std::size_t i = 0; i < s; ++i) {
                    v[i] -= c * u[i];
                }
            }
        }
        double norm = 0.0;
        for (const Complex& x : v) {
            norm += std::norm(x);
        }
        norm = std::sqrt(norm);
        if (norm < 1e-6) {
            continue;
        }
        for (Complex& x : v) {
            x /= norm;
        }
        vectors.push_back(pca::phase_normalize(v));
    }
}

// Index of the coset paired with t under k -> -k, and the position map
// within it: -(t + lN) mod n = partner + l' N.
std::size_t partner_coset(std::size_t t, std::size_t symbols) { return (symbols - t) % symbols; }
std::size_t partner_position(std::size_t t, std::size_t l, std::size_t s) {
    return t == 0 ? (s - l) % s : s - 1 - l;
}

// Chooses phi_t = phi_{-t} = -arg(A_t) / 2 with A_t = sum_{k in t + <N>} q^(k) q^(-k),
// which makes every A_t real and nonnegative. That removes the imaginary part
// of the pulse whenever a real solution exists in the phase orbit.
void apply_zero_phase(std::vector<std::vector<Complex>>& cosets, std::size_t s) {
    const std::size_t symbols = cosets.size();
    for (std::size_t t = 0; t < symbols; ++t) {
        const std::size_t u = partner_coset(t, symbols);
        if (u < t) {
            continue;
        }
        Complex a = 0.0;
        for (std::size_t l = 0; l < s; ++l) {
            a += cosets[t][l] * cosets[u][partner_position(t, l, s)];
        }
        if (std::abs(a) < 1e-14) {
            continue;
        }
        const Complex rotation = std::polar(1.0, -std::arg(a) / 2.0);
        for (Complex& v : cosets[t]) {
            v *= rotation;
        }
        if (u != t) {
            for (Complex& v : cosets[u]) {
                v *= rotation;
            }
        }
    }
}

struct CosetProblem {
    std::vector<std::vector<Complex>> vectors;  // unit norm
    std::vector<double> eigenvalues;
};

CosetProblem solve_rows(linalg::Matrix rows, std::size_t count, double weight) {
    CosetProblem out;
    const std::size_t s = rows.cols;
    double energy = 0.0;
    for (const Complex& v : rows.data) {
        energy += std::norm(v);
    }
    if (energy > 0.0) {
        pca::detail::DenseComponents dense = pca::detail::dense_components(std::move(rows), count, weight);
        out.vectors = std::move(dense.vectors);
        out.eigenvalues = std::move(dense.eigenvalues);
    }
    complete_basis(out.vectors, count, s);
    out.eigenvalues.resize(out.vectors.size(), 0.0);
    return out;
}

} // namespace

Dataset extend_truncate(const Dataset& data, std::size_t s) {
    if (s == 0) {
        throw InvalidArgument("extend_truncate: s must be positive");
    }
    if (data.empty()) {
        throw InvalidArgument("extend_truncate: empty dataset");
    }
    const std::size_t original = data.length();
    if (original < s) {
        throw InvalidArgument("extend_truncate: vectors of length " + std::to_string(original) +
                              " are shorter than one symbol period s = " + std::to_string(s));
    }
    const std::size_t n = (original / s) * s;
    if (n == original) {
        return data;
    }
    auto resize = [n](const Signal& x) {
        std::vector<Complex> v(x.begin(), x.end());
        v.resize(n, Complex{});
        return Signal(std::move(v));
    };
    std::vector<Signal> out;
    out.reserve(data.size());
    for (const Signal& x : data) {
        out.push_back(resize(x));
    }
    if (data.centered()) {
        return Dataset(std::move(out), resize(*data.centroid()));
    }
    return Dataset(std::move(out));
}

std::vector<Spectrum> augment(std::span<const Spectrum> spectra, std::size_t symbol_count) {
    if (spectra.empty()) {
        return {};
    }
    const std::size_t n = spectra.front().size();
    if (symbol_count == 0 || n % symbol_count != 0) {
        throw InvalidArgument("augment: N must divide the spectrum length");
    }
    for (const Spectrum& y : spectra) {
        if (y.size() != n) {
            throw InvalidArgument("augment: spectra have different lengths");
        }
    }
    const std::size_t m = spectra.size();
    std::vector<Spectrum> out;
    out.reserve(m * symbol_count);
    for (std::size_t j = 0; j < symbol_count; ++j) {
        // The ramp depends on jk mod N only.
        std::vector<Complex> ramp(symbol_count);
        for (std::size_t r = 0; r < symbol_count; ++r) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * r) % symbol_count) /
                                 static_cast<double>(symbol_count);
            ramp[r] = std::polar(1.0, angle);
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Complex> z(n);
            for (std::size_t k = 0; k < n; ++k) {
                z[k] = spectra[i][static_cast<std::ptrdiff_t>(k)] * ramp[k % symbol_count];
            }
            out.emplace_back(std::move(z), symbol_count);
        }
    }
    return out;
}

CosetSolution solve_coset(std::span<const Spectrum> augmented, std::size_t t, std::size_t symbol_count) {
    if (augmented.empty()) {
        throw InvalidArgument("solve_coset: no data");
    }
    const std::size_t n = augmented.front().size();
    if (symbol_count == 0 || n % symbol_count != 0) {
        throw InvalidArgument("solve_coset: N must divide the spectrum length");
    }
    if (t >= symbol_count) {
        throw InvalidArgument("solve_coset: coset index out of range");
    }
    const std::size_t s = n / symbol_count;
    linalg::Matrix rows(augmented.size(), s);
    for (std::size_t r = 0; r < augmented.size(); ++r) {
        const std::vector<Complex> coset = coset_extract(augmented[r], t, symbol_count);
        std::copy(coset.begin(), coset.end(), rows.row(r).begin());
    }
    CosetProblem problem = solve_rows(std::move(rows), 1, 1.0);
    CosetSolution out;
    const double scale = 1.0 / std::sqrt(static_cast<double>(symbol_count));
    out.values = std::move(problem.vectors.front());
    for (Complex& v : out.values) {
        v *= scale;
    }
    out.eigenvalue = problem.eigenvalues.front();
    return out;
}

QpcaResult quasicyclic_pca(const Dataset& data, const QpcaConfig& config) {
    if (config.s == 0) {
        throw InvalidArgument("qpca: s must be positive");
    }
    if (config.num_components == 0) {
        throw InvalidArgument("qpca: at least one component is required");
    }
    const Dataset extended = extend_truncate(data, config.s);
    pca::CenterResult centered = pca::center(extended);
    const std::size_t n = extended.length();
    const std::size_t s = config.s;
    const std::size_t symbols = n / s;
    const std::size_t m = extended.size();

    const double total = centered.centered.energy();
    if (!(total > 0.0)) {
        throw DegenerateInput("qpca: centered data has zero energy");
    }

    std::vector<Spectrum> spectra;
    spectra.reserve(m);
    for (const Signal& y : centered.centered) {
        spectra.push_back(dft(y).with_factorization(symbols));
    }

    const std::size_t wanted = std::min(config.num_components, s);
    std::vector<CosetProblem> problems(symbols);

    if (config.route == AugmentationRoute::Explicit) {
        const std::vector<Spectrum> augmented = augment(spectra, symbols);
        parallel_for(symbols, config.threads, [&](std::size_t t) {
            linalg::Matrix rows(augmented.size(), s);
            for (std::size_t r = 0; r < augmented.size(); ++r) {
                for (std::size_t l = 0; l < s; ++l) {
                    rows(r, l) = augmented[r][static_cast<std::ptrdiff_t>(t + l * symbols)];
                }
            }
            problems[t] = solve_rows(std::move(rows), wanted, 1.0);
        });
    } else {
        parallel_for(symbols, config.threads, [&](std::size_t t) {
            linalg::Matrix rows(m, s);
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t l = 0; l < s; ++l) {
                    rows(r, l) = spectra[r][static_cast<std::ptrdiff_t>(t + l * symbols)];
                }
            }
            problems[t] = solve_rows(std::move(rows), wanted, static_cast<double>(symbols));
        });
    }

    // Keep component j only if it captures a non-negligible share somewhere.
    const double augmented_total = static_cast<double>(symbols) * total;
    std::size_t count = 0;
    for (std::size_t j = 0; j < wanted; ++j) {
        double captured = 0.0;
        for (const CosetProblem& p : problems) {
            captured += p.eigenvalues[j];
        }
        if (j > 0 && captured <= kRankCutoff * augmented_total) {
            break;
        }
        ++count;
    }

    QpcaResult result;
    result.symbols = symbols;
    result.oversampling = s;
    result.length = n;
    result.centroid = centered.centroid;
    result.total_energy = total;

    const double scale = 1.0 / std::sqrt(static_cast<double>(symbols));
    for (std::size_t j = 0; j < count; ++j) {
        std::vector<std::vector<Complex>> cosets(symbols);
        std::vector<double> eigenvalues(symbols);
        for (std::size_t t = 0; t < symbols; ++t) {
            cosets[t] = problems[t].vectors[j];
            eigenvalues[t] = problems[t].eigenvalues[j];
        }
        if (config.phase_policy == PhasePolicy::ZeroPhase) {
            apply_zero_phase(cosets, s);
        }
        std::vector<Complex> q_hat(n);
        for (std::size_t t = 0; t < symbols; ++t) {
            for (std::size_t l = 0; l < s; ++l) {
                q_hat[t + l * symbols] = cosets[t][l] * scale;
            }
        }
        Spectrum spectrum(std::move(q_hat), symbols);
        Signal q = idft(spectrum);
        require_orthonormal(q, s, config.tol, "qpca");

        const std::vector<Complex> q_spectrum = dft(q.values());
        double captured = 0.0;
        for (const Spectrum& y : spectra) {
            captured += captured_energy(y.values(), q_spectrum, symbols);
        }
        result.components.push_back(std::move(q));
        result.spectra.push_back(std::move(spectrum));
        result.lambdas.push_back(captured / total);
        result.coset_eigenvalues.push_back(std::move(eigenvalues));
    }
    return result;
}

std::vector<Complex> family_coefficients(const Signal& y, const Signal& q, std::size_t s) {
    if (y.size() != q.size()) {
        throw InvalidArgument("family_coefficients: length mismatch");
    }
    const std::size_t symbols = checked_symbol_count(q.size(), s, "family_coefficients");
    const std::vector<Complex> b = coset_correlation(dft(y.values()), dft(q.values()), symbols);
    std::vector<Complex> c = idft(b);
    const double gain = std::sqrt(static_cast<double>(symbols));
    for (Complex& v : c) {
        v *= gain;
    }
    return c;
}

Signal project_family(const Signal& y, const Signal& q, std::size_t s, double tol) {
    if (y.size() != q.size()) {
        throw InvalidArgument("project_family: length mismatch");
    }
    const std::size_t symbols = checked_symbol_count(q.size(), s, "project_family");
    require_orthonormal(q, s, tol, "project_family");
    const std::vector<Complex> q_hat = dft(q.values());
    const std::vector<Complex> b = coset_correlation(dft(y.values()), q_hat, symbols);
    std::vector<Complex> p_hat(q_hat.size());
    const double gain = static_cast<double>(symbols);
    for (std::size_t k = 0; k < q_hat.size(); ++k) {
        p_hat[k] = gain * q_hat[k] * b[k % symbols];
    }
    return Signal(idft(p_hat));
}

double energy_fraction(const Dataset& data, const Signal& q, std::size_t s, double tol) {
    if (data.empty()) {
        throw InvalidArgument("energy_fraction: empty dataset");
    }
    if (data.length() != q.size()) {
        throw InvalidArgument("energy_fraction: length mismatch");
    }
    const std::size_t symbols = checked_symbol_count(q.size(), s, "energy_fraction");
    require_orthonormal(q, s, tol, "energy_fraction");
    const double total = data.energy();
    if (!(total > 0.0)) {
        throw DegenerateInput("energy_fraction: data has zero energy");
    }
    const std::vector<Complex> q_hat = dft(q.values());
    double captured = 0.0;
    for (const Signal& y : data) {
        captured += captured_energy(dft(y.values()), q_hat, symbols);
    }
    return captured / total;
}

Spectrum rotate_cosets(const Spectrum& spectrum, std::span<const double> phases) {
    const std::size_t symbols = phases.size();
    if (symbols == 0 || spectrum.size() % symbols != 0) {
        throw InvalidArgument("rotate_cosets: number of phases must divide the spectrum length");
    }
    std::vector<Complex> out(spectrum.begin(), spectrum.end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] *= std::polar(1.0, phases[k % symbols]);
    }
    return Spectrum(std::move(out), symbols);
}

} // namespace qpca
