#include <string>

#include <CLI11.hpp>

#include "fingersense/commands.hpp"
#include "fingersense/version.hpp"

namespace {

void add_common_options(CLI::App* sub, fingersense::cli::CliOptions& opt) {
    sub->add_option("--config", opt.config_path, "flat key = value configuration file")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory (default: current directory)");
    sub->add_option("--seed", opt.seed, "override the scenario seed");
    sub->add_option("--alpha", opt.alpha, "detection confidence level");
    sub->add_option("--cutoff", opt.cutoff, "variance cutoff for the principal subspace");
    sub->add_option("--debounce", opt.debounce, "consecutive readings required to flip state");
    sub->add_flag("--clamp", opt.clamp, "clip estimated joint angles to [0, theta_max]");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fingersense: sensing pipeline for an optically sensorized finger"};
    app.set_version_flag("--version", fingersense::kVersion);
    app.require_subcommand(1);

    const std::array<std::pair<const char*, const char*>, 7> commands{{
        {"simulate", "generate a synthetic trial log from a scenario config"},
        {"calibrate", "fit calibration lines and quality metrics from a trial log"},
        {"estimate", "estimate fingertip poses from a trial log and calibration model"},
        {"detect-train", "train the PCA contact detector on free-motion data"},
        {"detect-run", "replay a trial log through the contact detector"},
        {"stress-report", "normalized cycle amplitudes and drift check for a stress test"},
        {"ancova", "test whether per-sensor response lines differ"},
    }};

    fingersense::cli::CliOptions opt;
    for (const auto& [name, description] : commands)
        add_common_options(app.add_subcommand(name, description), opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fingersense::cli::kExitConfig;
    }

    return fingersense::cli::run_command(app.get_subcommands().front()->get_name(), opt);
}
