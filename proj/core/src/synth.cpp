#include "qpca/synth.hpp"

#include "qpca/dft.hpp"
#include "qpca/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace qpca::synth {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularGuard = 1e-8;
// Periodic images summed when a circular frame is built in the time domain.
constexpr int kCircularImages = 8;

void validate_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("rrc: roll-off must lie in [0, 1]");
    }
}

void validate(const ModulationSpec& spec) {
    validate_alpha(spec.alpha);
    if (spec.symbols == 0) {
        throw InvalidArgument("modulation: at least one symbol is required");
    }
    if (!(spec.s > 0.0) || !std::isfinite(spec.s)) {
        throw InvalidArgument("modulation: s must be positive");
    }
    if (!(spec.power >= 0.0)) {
        throw InvalidArgument("modulation: power must be nonnegative");
    }
    if (!(spec.noise_sigma >= 0.0)) {
        throw InvalidArgument("modulation: noise sigma must be nonnegative");
    }
    if (frame_length(spec) == 0) {
        throw InvalidArgument("modulation: frame is shorter than one sample");
    }
}

bool integral_length(const ModulationSpec& spec) {
    const double exact = spec.s * static_cast<double>(spec.symbols);
    return std::fabs(exact - std::round(exact)) < 1e-9;
}

} // namespace

std::size_t frame_length(const ModulationSpec& spec) {
    const double exact = spec.s * static_cast<double>(spec.symbols);
    if (integral_length(spec)) {
        return static_cast<std::size_t>(std::llround(exact));
    }
    return static_cast<std::size_t>(std::floor(exact));
}

double rrc_pulse(double alpha, double tau) {
    validate_alpha(alpha);
    if (std::fabs(tau) < kSingularGuard) {
        return 1.0 + alpha * (4.0 / kPi - 1.0);
    }
    if (alpha > 0.0 && std::fabs(std::fabs(tau) - 1.0 / (4.0 * alpha)) < kSingularGuard) {
        const double arg = kPi * (1.0 + alpha) / (4.0 * alpha);
        return alpha * (std::sin(arg) - 2.0 / kPi * std::cos(arg));
    }
    const double numerator = std::sin(kPi * tau * (1.0 - alpha)) + 4.0 * alpha * tau * std::cos(kPi * tau * (1.0 + alpha));
    const double x = 4.0 * alpha * tau;
    return numerator / (kPi * tau * (1.0 - x * x));
}

double rrc_spectrum(double alpha, double f) {
    validate_alpha(alpha);
    const double a = std::fabs(f);
    const double inner = (1.0 - alpha) / 2.0;
    const double outer = (1.0 + alpha) / 2.0;
    if (alpha == 0.0) {
        if (a < 0.5) {
            return 1.0;
        }
        return a == 0.5 ? 0.5 : 0.0;
    }
    if (a <= inner) {
        return 1.0;
    }
    if (a >= outer) {
        return 0.0;
    }
    return std::cos(kPi / (2.0 * alpha) * (a - inner));
}

Pulse rrc(double alpha) {
    validate_alpha(alpha);
    return Pulse{[alpha](double tau) { return rrc_pulse(alpha, tau); },
                 [alpha](double f) { return rrc_spectrum(alpha, f); }};
}

Signal rrc_frame_pulse(double alpha, std::size_t symbols, std::size_t s) {
    validate_alpha(alpha);
    if (symbols == 0 || s < 2) {
        throw InvalidArgument("rrc_frame_pulse: need N >= 1 and s >= 2");
    }
    const std::size_t n = symbols * s;
    std::vector<Complex> spectrum(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double signed_k = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        spectrum[k] = rrc_spectrum(alpha, signed_k / static_cast<double>(symbols));
    }
    // Exact coset energies 1/N; this also settles the alpha = 0 band edge.
    const double target = 1.0 / static_cast<double>(symbols);
    for (std::size_t t = 0; t < symbols; ++t) {
        double energy = 0.0;
        for (std::size_t k = t; k < n; k += symbols) {
            energy += std::norm(spectrum[k]);
        }
        const double scale = std::sqrt(target / energy);
        for (std::size_t k = t; k < n; k += symbols) {
            spectrum[k] *= scale;
        }
    }
    std::vector<Complex> time = idft(spectrum);
    for (Complex& v : time) {
        v = {v.real(), 0.0};
    }
    return Signal(std::move(time));
}

Signal random_shift_orthonormal_pulse(std::size_t symbols, std::size_t s, Rng& rng) {
    if (symbols == 0 || s == 0) {
        throw InvalidArgument("random_shift_orthonormal_pulse: N and s must be positive");
    }
    const std::size_t n = symbols * s;
    std::vector<Complex> spectrum(n);
    for (Complex& v : spectrum) {
        const double re = rng.normal();
        v = {re, rng.normal()};
    }
    const double target = 1.0 / static_cast<double>(symbols);
    for (std::size_t t = 0; t < symbols; ++t) {
        double energy = 0.0;
        for (std::size_t k = t; k < n; k += symbols) {
            energy += std::norm(spectrum[k]);
        }
        if (energy == 0.0) {
            spectrum[t] = 1.0;
            energy = 1.0;
        }
        const double scale = std::sqrt(target / energy);
        for (std::size_t k = t; k < n; k += symbols) {
            spectrum[k] *= scale;
        }
    }
    return Signal(idft(spectrum));
}

std::vector<Complex> constellation(Alphabet alphabet) {
    static constexpr double kLevels[] = {-3.0, -1.0, 1.0, 3.0};
    std::vector<Complex> points;
    if (alphabet == Alphabet::PAM4) {
        const double scale = 1.0 / std::sqrt(5.0);
        for (double a : kLevels) {
            points.emplace_back(a * scale, 0.0);
        }
    } else {
        const double scale = 1.0 / std::sqrt(10.0);
        for (double re : kLevels) {
            for (double im : kLevels) {
                points.emplace_back(re * scale, im * scale);
            }
        }
    }
    return points;
}

double constellation_power(Alphabet alphabet) {
    const std::vector<Complex> points = constellation(alphabet);
    double sum = 0.0;
    for (const Complex& p : points) {
        sum += std::norm(p);
    }
    return sum / static_cast<double>(points.size());
}

std::vector<Complex> draw_symbols(Alphabet alphabet, std::size_t count, Rng& rng) {
    const std::vector<Complex> points = constellation(alphabet);
    std::vector<Complex> out(count);
    for (Complex& a : out) {
        a = points[rng.uniform_index(points.size())];
    }
    return out;
}

Modulator::Modulator(Pulse pulse, const ModulationSpec& spec) : spec_(spec) {
    validate(spec);
    if (!pulse.time) {
        throw InvalidArgument("modulation: pulse has no time-domain form");
    }
    length_ = frame_length(spec);
    const std::size_t symbols = spec.symbols;
    const double delay = spec.offset_samples / spec.s;
    const double gain = std::sqrt(spec.power);

    if (spec.frame == FrameMode::Circular && pulse.spectrum && integral_length(spec)) {
        // Sampling the N-periodic pulse at rate s: bin k collects the Fourier
        // series terms k + r n, each carrying the symbol transform at
        // (k + r n) mod N.
        const std::size_t n = length_;
        const double rate = static_cast<double>(n) / static_cast<double>(symbols);
        const int reach = static_cast<int>(std::ceil(2.0 / rate)) + 1;
        for (std::size_t k = 0; k < n; ++k) {
            for (int r = -reach; r <= reach; ++r) {
                const long long index = static_cast<long long>(k) + static_cast<long long>(r) * static_cast<long long>(n);
                const double f = static_cast<double>(index) / static_cast<double>(symbols);
                const double value = pulse.spectrum(f);
                if (value == 0.0) {
                    continue;
                }
                const long long wrapped = ((index % static_cast<long long>(symbols)) + static_cast<long long>(symbols)) %
                                          static_cast<long long>(symbols);
                terms_.push_back(Term{k, static_cast<std::size_t>(wrapped),
                                      gain * rate * value * std::polar(1.0, -2.0 * kPi * f * delay)});
            }
        }
        spectral_ = true;
        return;
    }

    kernel_.assign(length_ * symbols, 0.0);
    const int images = spec.frame == FrameMode::Circular ? kCircularImages : 0;
    const double period = static_cast<double>(symbols);
    for (std::size_t k = 0; k < length_; ++k) {
        const double tau = static_cast<double>(k) / spec.s - delay;
        for (std::size_t j = 1; j <= symbols; ++j) {
            double sum = 0.0;
            for (int r = -images; r <= images; ++r) {
                sum += pulse.time(tau - static_cast<double>(j) + r * period);
            }
            kernel_[k * symbols + (j - 1)] = gain * sum;
        }
    }
}

Signal Modulator::operator()(std::span<const Complex> symbols) const {
    if (symbols.size() != spec_.symbols) {
        throw InvalidArgument("modulate: expected " + std::to_string(spec_.symbols) + " symbols, got " +
                              std::to_string(symbols.size()));
    }
    const std::size_t count = spec_.symbols;
    if (spectral_) {
        // a(j) sits at time j = 1..N, i.e. index j mod N.
        std::vector<Complex> a(count);
        for (std::size_t j = 1; j <= count; ++j) {
            a[j % count] = symbols[j - 1];
        }
        std::vector<Complex> a_hat(count);
        fft_plan(count)->forward(a, a_hat);
        std::vector<Complex> y_hat(length_);
        for (const Term& term : terms_) {
            y_hat[term.bin] += term.weight * a_hat[term.symbol_bin];
        }
        std::vector<Complex> y(length_);
        fft_plan(length_)->backward(y_hat, y);
        const double scale = 1.0 / static_cast<double>(length_);
        for (Complex& v : y) {
            v *= scale;
        }
        return Signal(std::move(y));
    }
    std::vector<Complex> y(length_);
    for (std::size_t k = 0; k < length_; ++k) {
        const double* row = kernel_.data() + k * count;
        Complex sum = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            sum += row[j] * symbols[j];
        }
        y[k] = sum;
    }
    return Signal(std::move(y));
}

Signal modulate(std::span<const Complex> symbols, const Pulse& pulse, const ModulationSpec& spec) {
    return Modulator(pulse, spec)(symbols);
}

Signal add_awgn(const Signal& x, double sigma, Rng& rng, bool real_noise) {
    if (!(sigma >= 0.0)) {
        throw InvalidArgument("add_awgn: sigma must be nonnegative");
    }
    if (sigma == 0.0) {
        return x;
    }
    std::vector<Complex> out(x.begin(), x.end());
    if (real_noise) {
        for (Complex& v : out) {
            v += sigma * rng.normal();
        }
    } else {
        const double component = sigma / std::sqrt(2.0);
        for (Complex& v : out) {
            const double re = rng.normal();
            v += Complex{component * re, component * rng.normal()};
        }
    }
    return Signal(std::move(out));
}

Dataset two_system_mixture(const ModulationSpec& first, const ModulationSpec& second, std::size_t m, const Rng& rng) {
    if (first.symbols != second.symbols || first.s != second.s || first.frame != second.frame) {
        throw InvalidArgument("two_system_mixture: systems must share N, s and frame mode");
    }
    const Modulator one(rrc(first.alpha), first);
    const Modulator two(rrc(second.alpha), second);
    const double sigma = std::hypot(first.noise_sigma, second.noise_sigma);
    std::vector<Signal> frames;
    frames.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rng a_stream = rng.substream("system1", i);
        Rng b_stream = rng.substream("system2", i);
        Rng noise_stream = rng.substream("noise", i);
        const std::vector<Complex> a = draw_symbols(first.alphabet, first.symbols, a_stream);
        const std::vector<Complex> b = draw_symbols(second.alphabet, second.symbols, b_stream);
        frames.push_back(add_awgn(one(a) + two(b), sigma, noise_stream, first.real_noise));
    }
    return Dataset(std::move(frames));
}

Dataset single_system(const ModulationSpec& spec, std::size_t m, const Rng& rng) {
    const Modulator modulator(rrc(spec.alpha), spec);
    std::vector<Signal> frames;
    frames.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rng a_stream = rng.substream("system1", i);
        Rng noise_stream = rng.substream("noise", i);
        const std::vector<Complex> a = draw_symbols(spec.alphabet, spec.symbols, a_stream);
        frames.push_back(add_awgn(modulator(a), spec.noise_sigma, noise_stream, spec.real_noise));
    }
    return Dataset(std::move(frames));
}

Scenario intro_scenario(std::uint64_t seed, const IntroOptions& options) {
    if (options.m == 0) {
        throw InvalidArgument("intro: m must be positive");
    }
    const Rng rng(seed);
    Signal pulse = Signal::zeros(1);
    if (options.random_pulse) {
        Rng pulse_stream = rng.substream("pulse");
        pulse = random_shift_orthonormal_pulse(options.symbols, options.s, pulse_stream);
    } else {
        pulse = rrc_frame_pulse(options.alpha, options.symbols, options.s);
    }
    std::vector<Signal> shifts;
    shifts.reserve(options.symbols);
    for (std::size_t j = 0; j < options.symbols; ++j) {
        shifts.push_back(circular_shift(pulse, static_cast<std::ptrdiff_t>(j * options.s)));
    }
    std::vector<Signal> frames;
    frames.reserve(options.m);
    for (std::size_t i = 0; i < options.m; ++i) {
        Rng a_stream = rng.substream("system1", i);
        Rng noise_stream = rng.substream("noise", i);
        const std::vector<Complex> a = draw_symbols(Alphabet::PAM4, options.symbols, a_stream);
        Signal y = Signal::zeros(pulse.size());
        for (std::size_t j = 0; j < options.symbols; ++j) {
            y = y + a[j] * shifts[j];
        }
        frames.push_back(add_awgn(y, options.noise_sigma, noise_stream, true));
    }
    Scenario out;
    out.data = Dataset(std::move(frames));
    out.pulse = std::move(pulse);
    out.s_hint = static_cast<double>(options.s);
    out.description = "PAM4 frames of N=" + std::to_string(options.symbols) + " symbols over one " +
                      std::to_string(options.s) + "-shift-orthonormal pulse";
    return out;
}

Scenario mixture_scenario(std::uint64_t seed, const MixtureOptions& options) {
    ModulationSpec first;
    first.alphabet = Alphabet::QAM16;
    first.symbols = options.symbols;
    first.s = options.s;
    first.alpha = options.alpha1;
    first.power = options.p1;
    first.noise_sigma = options.noise_sigma;
    first.seed = seed;
    ModulationSpec second = first;
    second.alpha = options.alpha2;
    second.power = options.p2;
    second.offset_samples = options.offset_samples;
    second.noise_sigma = 0.0;
    Scenario out;
    out.data = two_system_mixture(first, second, options.m, Rng(seed));
    out.s_hint = options.s;
    out.description = "two RRC systems (alpha " + std::to_string(options.alpha1) + " and " +
                      std::to_string(options.alpha2) + "), powers " + std::to_string(options.p1) + " and " +
                      std::to_string(options.p2);
    return out;
}

Scenario sweep_scenario(std::uint64_t seed, const SweepOptions& options) {
    ModulationSpec spec;
    spec.alphabet = Alphabet::QAM16;
    spec.symbols = options.symbols;
    spec.s = options.s;
    spec.alpha = options.alpha;
    spec.noise_sigma = options.noise_sigma;
    spec.seed = seed;
    Scenario out;
    out.data = single_system(spec, options.m, Rng(seed));
    out.s_hint = options.s;
    out.description = "16QAM over RRC alpha " + std::to_string(options.alpha) + " at s = " + std::to_string(options.s);
    return out;
}

Scenario fractional_scenario(std::uint64_t seed, const FractionalOptions& options) {
    ModulationSpec spec;
    spec.alphabet = Alphabet::QAM16;
    spec.symbols = options.symbols;
    spec.s = options.s;
    spec.alpha = options.alpha;
    spec.noise_sigma = options.noise_sigma;
    spec.frame = options.frame;
    spec.seed = seed;
    Scenario out;
    out.data = single_system(spec, options.m, Rng(seed));
    out.s_hint = options.s;
    out.description = "16QAM over RRC alpha " + std::to_string(options.alpha) + " sampled at " +
                      std::to_string(options.s) + " samples per symbol";
    return out;
}

} // namespace qpca::synth
