#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace qpca::cli;

int main(int argc, char** argv) {
    CLI::App app{"Quasicyclic PCA: shift-orthonormal pulse families from cyclostationary data"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for all randomness")->capture_default_str();
    app.add_option("--threads", global.threads, "Worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--tol", global.tol, "Shift-orthonormality tolerance for outputs")->capture_default_str();

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth_cmd->add_option("scenario", synth.scenario, "intro | mixture | sweep | fractional")->required();
    synth_cmd->add_option("--out,-o", synth.out, "Output path (<stem>.json + <stem>.csv)")->required();
    synth_cmd->add_option("--m", synth.m, "Number of frames");
    synth_cmd->add_option("--symbols,-N", synth.symbols, "Symbols per frame");
    synth_cmd->add_option("--s", synth.s, "Samples per symbol");
    synth_cmd->add_option("--alpha", synth.alpha, "RRC roll-off");
    synth_cmd->add_option("--p1", synth.p1, "Power of system 1 (mixture)");
    synth_cmd->add_option("--p2", synth.p2, "Power of system 2 (mixture)");
    synth_cmd->add_option("--sigma", synth.sigma, "Noise standard deviation");
    synth_cmd->add_option("--frame", synth.frame, "circular | linear (fractional)");
    synth_cmd->add_flag("--random-pulse", synth.random_pulse, "Random shift-orthonormal pulse (intro)");

    QpcaOptions qpca;
    auto* qpca_cmd = app.add_subcommand("qpca", "Run quasicyclic PCA on a dataset");
    qpca_cmd->add_option("--in,-i", qpca.in, "Input dataset")->required();
    qpca_cmd->add_option("--out,-o", qpca.out, "Output directory")->required();
    qpca_cmd->add_option("--s", qpca.s, "Samples per symbol")->required();
    qpca_cmd->add_option("--components,-k", qpca.components, "Number of components")->capture_default_str();
    qpca_cmd->add_option("--phase", qpca.phase, "leading-real | zero-phase")->capture_default_str();
    qpca_cmd->add_option("--route", qpca.route, "collapsed | explicit")->capture_default_str();

    EstimateOptions estimate;
    auto* estimate_cmd = app.add_subcommand("estimate", "Sweep candidate symbol periods");
    estimate_cmd->add_option("--in,-i", estimate.in, "Input dataset")->required();
    estimate_cmd->add_option("--out,-o", estimate.out, "Output CSV")->required();
    estimate_cmd->add_option("--s-min", estimate.s_min, "Smallest candidate (default 3)");
    estimate_cmd->add_option("--s-max", estimate.s_max, "Largest candidate (default twice the bandwidth estimate)");
    estimate_cmd->add_option("--energy-threshold", estimate.energy_threshold, "Band energy share for the bandwidth estimate")
        ->capture_default_str();

    ResampleOptions resample;
    auto* resample_cmd = app.add_subcommand("resample", "Sinc-resample to an integer rate");
    resample_cmd->add_option("--in,-i", resample.in, "Input dataset")->required();
    resample_cmd->add_option("--out,-o", resample.out, "Output path")->required();
    resample_cmd->add_option("--s-old", resample.s_old, "Current samples per symbol")->required();
    resample_cmd->add_option("--s-new", resample.s_new, "Target samples per symbol")->required();

    FiguresOptions figures;
    auto* figures_cmd = app.add_subcommand("figures", "Write plot-ready CSVs for the bundled experiments");
    figures_cmd->add_option("scenario", figures.scenario, "intro | ex1 | ex2 | ex3 | all")->required();
    figures_cmd->add_option("--out-dir,-o", figures.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsageError;
    }

    return run_guarded(
        [&]() -> int {
            if (*synth_cmd) return cmd_synth(global, synth, std::cout);
            if (*qpca_cmd) return cmd_qpca(global, qpca, std::cout);
            if (*estimate_cmd) return cmd_estimate(global, estimate, std::cout);
            if (*resample_cmd) return cmd_resample(global, resample, std::cout);
            return cmd_figures(global, figures, std::cout);
        },
        std::cerr);
}
