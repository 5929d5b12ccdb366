#pragma once

// Pipeline commands behind the CLI subcommands. Each command reads one
// flat config file, writes its declared artifacts under the output
// directory, and is deterministic given (config, seed).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace fingersense::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitDegenerate = 4;

struct CliOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<double> cutoff;
    std::optional<int> debounce;
    bool clamp = false;
};

void cmd_simulate(const CliOptions& opt);
void cmd_calibrate(const CliOptions& opt);
void cmd_estimate(const CliOptions& opt);
void cmd_detect_train(const CliOptions& opt);
void cmd_detect_run(const CliOptions& opt);
void cmd_stress_report(const CliOptions& opt);
void cmd_ancova(const CliOptions& opt);

/// Run a command, mapping exceptions to the exit-code contract and
/// printing a single machine-readable error line to stderr on failure.
int run_command(const std::string& name, const CliOptions& opt);

}  // namespace fingersense::cli
