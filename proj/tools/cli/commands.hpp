#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace qpca::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kFormatError = 2,
    kNumericalError = 3,
};

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::size_t threads = 0;  // 0 = all cores
    double tol = 1e-9;
};

struct SynthOptions {
    std::string scenario;  // intro | mixture | sweep | fractional
    std::filesystem::path out;
    std::optional<std::size_t> m;
    std::optional<std::size_t> symbols;
    std::optional<double> s;
    std::optional<double> alpha;
    std::optional<double> p1;
    std::optional<double> p2;
    std::optional<double> sigma;
    std::optional<std::string> frame;  // circular | linear
    bool random_pulse = false;
};

struct QpcaOptions {
    std::filesystem::path in;
    std::filesystem::path out;
    std::size_t s = 1;
    std::size_t components = 1;
    std::string phase = "leading-real";  // leading-real | zero-phase
    std::string route = "collapsed";     // collapsed | explicit
};

struct EstimateOptions {
    std::filesystem::path in;
    std::filesystem::path out;
    std::optional<std::size_t> s_min;
    std::optional<std::size_t> s_max;
    double energy_threshold = 0.95;
};

struct ResampleOptions {
    std::filesystem::path in;
    std::filesystem::path out;
    double s_old = 1.0;
    std::size_t s_new = 1;
};

struct FiguresOptions {
    std::string scenario;  // intro | ex1 | ex2 | ex3 | all
    std::filesystem::path out_dir;
};

int cmd_synth(const GlobalOptions& global, const SynthOptions& options, std::ostream& out);
int cmd_qpca(const GlobalOptions& global, const QpcaOptions& options, std::ostream& out);
int cmd_estimate(const GlobalOptions& global, const EstimateOptions& options, std::ostream& out);
int cmd_resample(const GlobalOptions& global, const ResampleOptions& options, std::ostream& out);
int cmd_figures(const GlobalOptions& global, const FiguresOptions& options, std::ostream& out);

/// Runs a command, mapping exceptions to exit codes and messages on err.
int run_guarded(const std::function<int()>& command, std::ostream& err);

} // namespace qpca::cli
