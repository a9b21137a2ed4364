#include "cli/commands.hpp"

#include "cli/io.hpp"

#include "qpca/error.hpp"
#include "qpca/estimate.hpp"
#include "qpca/pca.hpp"
#include "qpca/quasicyclic.hpp"
#include "qpca/resample.hpp"
#include "qpca/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <vector>

namespace qpca::cli {
namespace fs = std::filesystem;

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

synth::FrameMode parse_frame(const std::string& name) {
    if (name == "circular") {
        return synth::FrameMode::Circular;
    }
    if (name == "linear") {
        return synth::FrameMode::Linear;
    }
    throw UsageError("unknown frame mode '" + name + "' (expected circular or linear)");
}

PhasePolicy parse_phase(const std::string& name) {
    if (name == "leading-real") {
        return PhasePolicy::LeadingReal;
    }
    if (name == "zero-phase") {
        return PhasePolicy::ZeroPhase;
    }
    throw UsageError("unknown phase policy '" + name + "' (expected leading-real or zero-phase)");
}

AugmentationRoute parse_route(const std::string& name) {
    if (name == "collapsed") {
        return AugmentationRoute::Collapsed;
    }
    if (name == "explicit") {
        return AugmentationRoute::Explicit;
    }
    throw UsageError("unknown route '" + name + "' (expected collapsed or explicit)");
}

std::ofstream open_csv(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create directory " + dir.string());
    }
}

// Signed frequency of DFT bin k in cycles per symbol.
double bin_frequency(std::size_t k, std::size_t n, std::size_t symbols) {
    const double signed_k = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return signed_k / static_cast<double>(symbols);
}

// Bins in increasing frequency order, for plotting.
std::vector<std::size_t> frequency_order(std::size_t n) {
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t k = n / 2 + 1; k < n; ++k) {
        order.push_back(k);
    }
    for (std::size_t k = 0; k <= n / 2; ++k) {
        order.push_back(k);
    }
    return order;
}

QpcaConfig make_config(const GlobalOptions& global, std::size_t s, std::size_t components) {
    QpcaConfig config;
    config.s = s;
    config.num_components = components;
    config.tol = global.tol;
    config.threads = global.threads;
    return config;
}

synth::Scenario build_scenario(const GlobalOptions& global, const SynthOptions& options) {
    if (options.scenario == "intro") {
        synth::IntroOptions o;
        if (options.m) o.m = *options.m;
        if (options.symbols) o.symbols = *options.symbols;
        if (options.s) {
            const double s = *options.s;
            if (s < 2.0 || s != std::floor(s)) {
                throw UsageError("intro: s must be an integer >= 2");
            }
            o.s = static_cast<std::size_t>(s);
        }
        if (options.alpha) o.alpha = *options.alpha;
        if (options.sigma) o.noise_sigma = *options.sigma;
        o.random_pulse = options.random_pulse;
        return synth::intro_scenario(global.seed, o);
    }
    if (options.scenario == "mixture") {
        synth::MixtureOptions o;
        if (options.m) o.m = *options.m;
        if (options.symbols) o.symbols = *options.symbols;
        if (options.s) o.s = *options.s;
        if (options.p1) o.p1 = *options.p1;
        if (options.p2) o.p2 = *options.p2;
        if (options.sigma) o.noise_sigma = *options.sigma;
        return synth::mixture_scenario(global.seed, o);
    }
    if (options.scenario == "sweep") {
        synth::SweepOptions o;
        if (options.m) o.m = *options.m;
        if (options.symbols) o.symbols = *options.symbols;
        if (options.s) o.s = *options.s;
        if (options.alpha) o.alpha = *options.alpha;
        if (options.sigma) o.noise_sigma = *options.sigma;
        return synth::sweep_scenario(global.seed, o);
    }
    if (options.scenario == "fractional") {
        synth::FractionalOptions o;
        if (options.m) o.m = *options.m;
        if (options.symbols) o.symbols = *options.symbols;
        if (options.s) o.s = *options.s;
        if (options.alpha) o.alpha = *options.alpha;
        if (options.sigma) o.noise_sigma = *options.sigma;
        if (options.frame) o.frame = parse_frame(*options.frame);
        return synth::fractional_scenario(global.seed, o);
    }
    throw UsageError("unknown scenario '" + options.scenario + "' (expected intro, mixture, sweep or fractional)");
}

void print_lambdas(const QpcaResult& result, std::ostream& out) {
    out << "N = " << result.symbols << ", s = " << result.oversampling << ", n = " << result.length << '\n';
    out << "component  lambda\n";
    for (std::size_t j = 0; j < result.lambdas.size(); ++j) {
        out << std::setw(9) << j + 1 << "  " << std::fixed << std::setprecision(6) << result.lambdas[j] << '\n';
    }
    out.unsetf(std::ios::floatfield);
}

void figures_intro(const GlobalOptions& global, const fs::path& dir, std::ostream& readme) {
    const synth::Scenario scenario = synth::intro_scenario(global.seed);
    const Signal& pulse = *scenario.pulse;
    const std::size_t s = static_cast<std::size_t>(scenario.s_hint);
    const std::size_t n = pulse.size();
    const std::size_t symbols = n / s;

    std::ofstream p = open_csv(dir / "intro_pulse.csv");
    p << "index,pulse\n";
    for (std::size_t i = 0; i < n; ++i) {
        p << i << ',' << format_double(pulse[static_cast<std::ptrdiff_t>(i)].real()) << '\n';
    }
    std::ofstream f = open_csv(dir / "intro_frame.csv");
    f << "index,value\n";
    for (std::size_t i = 0; i < n; ++i) {
        f << i << ',' << format_double(scenario.data[0][static_cast<std::ptrdiff_t>(i)].real()) << '\n';
    }

    const pca::CenterResult centered = pca::center(scenario.data);
    const pca::PcaResult plain = pca::components(centered.centered, symbols);
    std::ofstream c = open_csv(dir / "intro_pca.csv");
    c << "index";
    for (std::size_t j = 0; j < plain.components.size(); ++j) {
        c << ",pc" << j + 1;
    }
    c << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        c << i;
        for (const Signal& q : plain.components) {
            c << ',' << format_double(q[static_cast<std::ptrdiff_t>(i)].real());
        }
        c << '\n';
    }

    const QpcaResult result = quasicyclic_pca(scenario.data, make_config(global, s, 1));
    std::ofstream q = open_csv(dir / "intro_qpca.csv");
    q << "index";
    for (std::size_t j = 0; j < symbols; ++j) {
        q << ",shift" << j * s;
    }
    q << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        q << i;
        for (std::size_t j = 0; j < symbols; ++j) {
            const std::ptrdiff_t at = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j * s);
            q << ',' << format_double(result.components[0][at].real());
        }
        q << '\n';
    }
    readme << "intro_pulse.csv   length-" << n << " pulse, orthogonal to its " << s << "-shifts\n"
           << "intro_frame.csv   one PAM4 data frame built from it\n"
           << "intro_pca.csv     the " << plain.components.size() << " leading ordinary principal components (real parts)\n"
           << "intro_qpca.csv    first QPCA component and its " << s << "-shifts (real parts)\n";
}

void figures_ex1(const GlobalOptions& global, const fs::path& dir, std::ostream& readme) {
    const std::vector<std::pair<double, double>> mixes = {{1.0, 0.0}, {0.8, 0.2}, {0.5, 0.5}, {0.2, 0.8}, {0.0, 1.0}};
    std::vector<QpcaResult> results;
    for (const auto& [p1, p2] : mixes) {
        synth::MixtureOptions o;
        o.p1 = p1;
        o.p2 = p2;
        const synth::Scenario scenario = synth::mixture_scenario(global.seed, o);
        results.push_back(quasicyclic_pca(scenario.data, make_config(global, 9, 2)));
    }
    for (std::size_t component = 0; component < 2; ++component) {
        const std::string name = "ex1_q" + std::to_string(component + 1) + "_spectra.csv";
        std::ofstream out = open_csv(dir / name);
        out << "k,frequency";
        for (const auto& [p1, p2] : mixes) {
            out << ",P" << p1 << "_" << p2;
        }
        out << '\n';
        const std::size_t n = results.front().length;
        const std::size_t symbols = results.front().symbols;
        for (std::size_t k : frequency_order(n)) {
            out << k << ',' << format_double(bin_frequency(k, n, symbols));
            for (const QpcaResult& r : results) {
                const double value =
                    component < r.spectra.size() ? std::abs(r.spectra[component][static_cast<std::ptrdiff_t>(k)]) : 0.0;
                out << ',' << format_double(value);
            }
            out << '\n';
        }
    }
    std::ofstream lambdas = open_csv(dir / "ex1_lambdas.csv");
    lambdas << "p1,p2,lambda1,lambda2\n";
    for (std::size_t i = 0; i < mixes.size(); ++i) {
        const auto& l = results[i].lambdas;
        lambdas << mixes[i].first << ',' << mixes[i].second << ',' << format_double(l.at(0)) << ','
                << format_double(l.size() > 1 ? l[1] : 0.0) << '\n';
    }
    readme << "ex1_q1_spectra.csv  |DFT| of the first QPCA component for each (P1, P2) mix, frequency in cycles/symbol\n"
           << "ex1_q2_spectra.csv  same for the second component\n"
           << "ex1_lambdas.csv     energy fractions per mix\n";
}

void figures_ex2(const GlobalOptions& global, const fs::path& dir, std::ostream& readme) {
    const synth::Scenario scenario = synth::sweep_scenario(global.seed);
    const PeriodSweep sweep = sweep_period(scenario.data, 3, 18, make_config(global, 1, 2));
    std::ofstream ratio = open_csv(dir / "ex2_ratio.csv");
    ratio << "s,lambda1,lambda2,ratio,n_used\n";
    for (const PeriodSweepRow& row : sweep.rows) {
        ratio << row.s << ',' << format_double(row.lambda1) << ',' << format_double(row.lambda2) << ','
              << format_double(row.ratio) << ',' << row.n_used << '\n';
    }
    std::ofstream pulses = open_csv(dir / "ex2_pulses.csv");
    pulses << "s,index,abs\n";
    for (std::size_t s : {6, 9, 12}) {
        const QpcaResult result = quasicyclic_pca(scenario.data, make_config(global, s, 1));
        const Signal& q = result.components[0];
        for (std::size_t i = 0; i < q.size(); ++i) {
            pulses << s << ',' << i << ',' << format_double(std::abs(q[static_cast<std::ptrdiff_t>(i)])) << '\n';
        }
    }
    readme << "ex2_ratio.csv   lambda1 / lambda2 against candidate s (best s = " << sweep.best_s << ")\n"
           << "ex2_pulses.csv  |q1| for s = 6, 9, 12\n";
}

void figures_ex3(const GlobalOptions& global, const fs::path& dir, std::ostream& readme) {
    const synth::Scenario scenario = synth::fractional_scenario(global.seed);
    const QpcaConfig config = make_config(global, 9, 1);
    const QpcaResult direct = quasicyclic_pca(scenario.data, config);
    ResampleSpec spec;
    spec.s_tilde = scenario.s_hint;
    spec.s_new = 9;
    spec.threads = global.threads;
    const QpcaResult resampled = quasicyclic_pca(resample_dataset(scenario.data, spec), config);

    std::ofstream pulses = open_csv(dir / "ex3_pulses.csv");
    pulses << "variant,index,re,abs\n";
    for (const auto& [name, result] : {std::pair<const char*, const QpcaResult*>{"direct", &direct},
                                       std::pair<const char*, const QpcaResult*>{"resampled", &resampled}}) {
        const Signal& q = result->components[0];
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Complex& v = q[static_cast<std::ptrdiff_t>(i)];
            pulses << name << ',' << i << ',' << format_double(v.real()) << ',' << format_double(std::abs(v)) << '\n';
        }
    }
    std::ofstream lambdas = open_csv(dir / "ex3_lambdas.csv");
    lambdas << "variant,lambda1\n"
            << "direct," << format_double(direct.lambdas[0]) << '\n'
            << "resampled," << format_double(resampled.lambdas[0]) << '\n';
    readme << "ex3_pulses.csv   first component at s = 9 from data sampled at " << scenario.s_hint
           << " samples/symbol, before and after resampling\n"
           << "ex3_lambdas.csv  the corresponding energy fractions\n";
}

} // namespace

int cmd_synth(const GlobalOptions& global, const SynthOptions& options, std::ostream& out) {
    const synth::Scenario scenario = build_scenario(global, options);
    DatasetFile file;
    file.data = scenario.data;
    file.manifest.m = scenario.data.size();
    file.manifest.n = scenario.data.length();
    file.manifest.s_hint = scenario.s_hint;
    file.manifest.description = options.scenario + ": " + scenario.description;
    file.manifest.seed = global.seed;
    write_dataset(options.out, file);
    const DatasetPaths paths = dataset_paths(options.out);
    out << "wrote " << file.manifest.m << " x " << file.manifest.n << " dataset to " << paths.payload.string() << '\n';
    return kSuccess;
}

int cmd_qpca(const GlobalOptions& global, const QpcaOptions& options, std::ostream& out) {
    const DatasetFile file = read_dataset(options.in);
    if (options.s == 0 || options.s > file.data.length()) {
        throw UsageError("--s must lie in 1.." + std::to_string(file.data.length()));
    }
    QpcaConfig config = make_config(global, options.s, options.components);
    config.phase_policy = parse_phase(options.phase);
    config.route = parse_route(options.route);
    const QpcaResult result = quasicyclic_pca(file.data, config);
    write_result(options.out, result);
    print_lambdas(result, out);
    return kSuccess;
}

int cmd_estimate(const GlobalOptions& global, const EstimateOptions& options, std::ostream& out) {
    const DatasetFile file = read_dataset(options.in);
    const std::size_t length = file.data.length();
    std::size_t s_min = options.s_min.value_or(3);
    std::size_t s_max = 0;
    if (options.s_max) {
        s_max = *options.s_max;
    } else {
        const BandwidthEstimate guess = bandwidth_period_estimate(file.data, options.energy_threshold);
        out << "bandwidth estimate: s ~ " << std::setprecision(4) << guess.s_estimate << " (band fraction "
            << guess.band_fraction << ")\n";
        out.unsetf(std::ios::floatfield);
        s_max = std::max<std::size_t>(s_min, static_cast<std::size_t>(std::llround(2.0 * guess.s_estimate)));
    }
    s_min = std::min(s_min, length);
    s_max = std::min(s_max, length);
    const PeriodSweep sweep = sweep_period(file.data, s_min, s_max, make_config(global, 1, 2));
    std::ofstream csv = open_csv(options.out);
    csv << "s,lambda1,lambda2,ratio,n_used\n";
    for (const PeriodSweepRow& row : sweep.rows) {
        csv << row.s << ',' << format_double(row.lambda1) << ',' << format_double(row.lambda2) << ','
            << format_double(row.ratio) << ',' << row.n_used << '\n';
    }
    out << "s* = " << sweep.best_s << '\n';
    return kSuccess;
}

int cmd_resample(const GlobalOptions& global, const ResampleOptions& options, std::ostream& out) {
    const DatasetFile file = read_dataset(options.in);
    ResampleSpec spec;
    spec.s_tilde = options.s_old;
    spec.s_new = options.s_new;
    spec.threads = global.threads;
    DatasetFile result;
    result.data = resample_dataset(file.data, spec);
    result.manifest = file.manifest;
    result.manifest.m = result.data.size();
    result.manifest.n = result.data.length();
    result.manifest.s_hint = static_cast<double>(options.s_new);
    result.manifest.description = file.manifest.description + " (resampled from " + format_double(options.s_old) +
                                  " to " + std::to_string(options.s_new) + " samples/symbol)";
    write_dataset(options.out, result);
    out << "wrote " << result.manifest.m << " x " << result.manifest.n << " dataset to "
        << dataset_paths(options.out).payload.string() << '\n';
    return kSuccess;
}

int cmd_figures(const GlobalOptions& global, const FiguresOptions& options, std::ostream& out) {
    const std::string& name = options.scenario;
    const bool all = name == "all";
    if (!all && name != "intro" && name != "ex1" && name != "ex2" && name != "ex3") {
        throw UsageError("unknown figure set '" + name + "' (expected intro, ex1, ex2, ex3 or all)");
    }
    ensure_directory(options.out_dir);
    std::ofstream readme = open_csv(options.out_dir / "README.txt");
    readme << "Plot data written by `qpca figures " << name << "` with seed " << global.seed << ".\n\n";
    if (all || name == "intro") figures_intro(global, options.out_dir, readme);
    if (all || name == "ex1") figures_ex1(global, options.out_dir, readme);
    if (all || name == "ex2") figures_ex2(global, options.out_dir, readme);
    if (all || name == "ex3") figures_ex3(global, options.out_dir, readme);
    out << "wrote plot data to " << options.out_dir.string() << '\n';
    return kSuccess;
}

int run_guarded(const std::function<int()>& command, std::ostream& err) {
    try {
        return command();
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kFormatError;
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << '\n';
        return kFormatError;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

} // namespace qpca::cli
