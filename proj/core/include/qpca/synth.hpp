#pragma once

#include "qpca/rng.hpp"
#include "qpca/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qpca::synth {

enum class Alphabet { PAM4, QAM16 };

enum class FrameMode {
    Circular,  // pulse tails wrap around the frame, so frames are exactly cyclostationary
    Linear,    // tails falling outside the frame are lost
};

struct ModulationSpec {
    Alphabet alphabet = Alphabet::QAM16;
    std::size_t symbols = 1;       // N
    double s = 1.0;                // samples per symbol, need not be an integer
    double alpha = 0.5;            // RRC roll-off
    double power = 1.0;            // P
    double offset_samples = 0.0;   // T, in samples
    double noise_sigma = 0.0;
    bool real_noise = false;       // real-valued instead of circular complex noise
    FrameMode frame = FrameMode::Circular;
    std::uint64_t seed = 0;
};

/// Frame length used for a spec: N s rounded when N s is an integer to
/// within 1e-9, floor(N s) otherwise.
std::size_t frame_length(const ModulationSpec& spec);

/// Root-raised-cosine pulse with unit symbol period, tau in symbol periods.
double rrc_pulse(double alpha, double tau);

/// Fourier transform of rrc_pulse, f in cycles per symbol. At the band edge of
/// the alpha = 0 pulse the midpoint value 1/2 is returned.
double rrc_spectrum(double alpha, double f);

/// Continuous-time pulse used by modulate. The spectrum is optional; when it
/// is present, circular frames are synthesized exactly in the DFT domain.
struct Pulse {
    std::function<double(double)> time;
    std::function<double(double)> spectrum;
};

Pulse rrc(double alpha);

/// Unit-energy, s-shift-orthonormal length N s sampling of the periodized RRC
/// pulse centered at sample 0. Real and even.
Signal rrc_frame_pulse(double alpha, std::size_t symbols, std::size_t s);

/// Random spectrum with every coset t + <N> rescaled to energy 1/N.
Signal random_shift_orthonormal_pulse(std::size_t symbols, std::size_t s, Rng& rng);

/// Average power of the normalized constellation (1 by construction).
double constellation_power(Alphabet alphabet);
std::vector<Complex> constellation(Alphabet alphabet);
std::vector<Complex> draw_symbols(Alphabet alphabet, std::size_t count, Rng& rng);

/// Precomputed modulator for one (pulse, spec) pair:
/// y(k) = sqrt(P) sum_{j=1}^{N} a(j) psi(k / s - j - T / s), k = 0 .. frame_length - 1.
class Modulator {
public:
    Modulator(Pulse pulse, const ModulationSpec& spec);

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] Signal operator()(std::span<const Complex> symbols) const;

private:
    ModulationSpec spec_;
    std::size_t length_ = 0;
    // Circular mode with a known spectrum: the frame DFT is assembled from
    // the symbol DFT, bin by bin.
    struct Term {
        std::size_t bin;
        std::size_t symbol_bin;
        Complex weight;
    };
    bool spectral_ = false;
    std::vector<Term> terms_;
    // Otherwise: length_ x N matrix of pulse samples.
    std::vector<double> kernel_;
};

Signal modulate(std::span<const Complex> symbols, const Pulse& pulse, const ModulationSpec& spec);

/// Adds noise of total per-sample variance sigma^2.
Signal add_awgn(const Signal& x, double sigma, Rng& rng, bool real_noise = false);

/// m frames of sqrt(P1) system 1 plus sqrt(P2) system 2 plus noise. Each
/// spec's noise_sigma contributes independent noise; the symbol streams and
/// the noise of frame i come from substreams of rng indexed by i.
Dataset two_system_mixture(const ModulationSpec& first, const ModulationSpec& second, std::size_t m, const Rng& rng);

/// m frames of a single system.
Dataset single_system(const ModulationSpec& spec, std::size_t m, const Rng& rng);

/// Ready-made datasets for the bundled experiments.
struct Scenario {
    Dataset data;
    std::optional<Signal> pulse;  // ground-truth pulse, when one exists
    double s_hint = 0.0;
    std::string description;
};

struct IntroOptions {
    std::size_t m = 100;
    std::size_t symbols = 6;
    std::size_t s = 9;
    double alpha = 0.5;
    double noise_sigma = 0.0;
    bool random_pulse = false;  // random shift-orthonormal pulse instead of RRC
};
Scenario intro_scenario(std::uint64_t seed, const IntroOptions& options = {});

struct MixtureOptions {
    std::size_t m = 100;
    double p1 = 1.0;
    double p2 = 0.0;
    double alpha1 = 0.04;
    double alpha2 = 0.9;
    std::size_t symbols = 81;
    double s = 9.0;
    double offset_samples = 5.0;
    double noise_sigma = 0.05;
};
Scenario mixture_scenario(std::uint64_t seed, const MixtureOptions& options = {});

struct SweepOptions {
    std::size_t m = 100;
    double alpha = 0.5;
    std::size_t symbols = 100;
    double s = 9.0;
    double noise_sigma = 0.1;
};
Scenario sweep_scenario(std::uint64_t seed, const SweepOptions& options = {});

struct FractionalOptions {
    std::size_t m = 100;
    double alpha = 0.0;
    std::size_t symbols = 100;
    double s = 8.5;
    double noise_sigma = 0.0;
    FrameMode frame = FrameMode::Linear;
};
Scenario fractional_scenario(std::uint64_t seed, const FractionalOptions& options = {});

} // namespace qpca::synth
