#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fingersense/commands.hpp"
#include "fingersense/csvio.hpp"
#include "fingersense/errors.hpp"

using namespace fingersense;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fingersense_cmd_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

cli::CliOptions options(const fs::path& config, const fs::path& out) {
    cli::CliOptions opt;
    opt.config_path = config;
    opt.out_dir = out;
    return opt;
}

const char* kNoiselessSpecs =
    "mcp.beta1_db_per_deg = 0.052\n"
    "pip.beta1_db_per_deg = 0.061\n"
    "dip.beta1_db_per_deg = 0.068\n"
    "mcp.i0_nw_cm2 = 24000\n"
    "pip.i0_nw_cm2 = 26000\n"
    "dip.i0_nw_cm2 = 22000\n";

}  // namespace

TEST_CASE("simulate then calibrate on a noiseless sweep reports a perfect fit") {
    TempDir dir;
    write(dir.path / "sim.cfg", std::string("kind = quasi_static\nrepeats = 1\n") +
                                    kNoiselessSpecs + "output = trial.csv\n");
    cli::cmd_simulate(options(dir.path / "sim.cfg", dir.path));
    REQUIRE(fs::exists(dir.path / "trial.csv"));

    write(dir.path / "cal.cfg", "input = " + (dir.path / "trial.csv").string() + "\n");
    cli::cmd_calibrate(options(dir.path / "cal.cfg", dir.path));

    const std::string report = slurp(dir.path / "calibration_report.csv");
    CHECK(report.find(io::kCalibrationHeader) != std::string::npos);
    CHECK(report.find("# fingersense") == 0);
    // Noiseless data: linearity 100, rms 0.
    CHECK(report.find(",100,0,") != std::string::npos);

    const auto rows = io::read_calibration_model(dir.path / "calibration_model.txt");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].cal.beta1_db_per_deg == doctest::Approx(0.052).epsilon(1e-9));
    CHECK(rows[0].cal.linearity_fsr_pct == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("estimate on the calibration sweep has near-zero error") {
    TempDir dir;
    write(dir.path / "sim.cfg", std::string("kind = quasi_static\nrepeats = 1\n") +
                                    kNoiselessSpecs);
    cli::cmd_simulate(options(dir.path / "sim.cfg", dir.path));
    write(dir.path / "cal.cfg",
          "input = " + (dir.path / "trial.csv").string() + "\nfit_single = true\n");
    cli::cmd_calibrate(options(dir.path / "cal.cfg", dir.path));
    write(dir.path / "est.cfg", "input = " + (dir.path / "trial.csv").string() +
                                    "\nmodel = " +
                                    (dir.path / "calibration_model.txt").string() + "\n");
    cli::cmd_estimate(options(dir.path / "est.cfg", dir.path));

    const std::string estimates = slurp(dir.path / "estimates.csv");
    CHECK(estimates.find("x_multi_mm") != std::string::npos);
    CHECK(estimates.find("x_single_mm") != std::string::npos);
    const std::size_t pos = estimates.find("# mean_err_multi_mm=");
    REQUIRE(pos != std::string::npos);
    const double mean_err = std::stod(estimates.substr(pos + 20));
    CHECK(mean_err < 1e-6);
}

TEST_CASE("detect pipeline finds exactly one onset and one release") {
    TempDir dir;
    const std::string noisy_specs =
        "mcp.beta1_db_per_deg = 0.052\nmcp.noise_sigma_db = 0.012\nmcp.hysteresis_db = 0.06\n"
        "pip.beta1_db_per_deg = 0.061\npip.noise_sigma_db = 0.012\npip.hysteresis_db = 0.22\n"
        "dip.beta1_db_per_deg = 0.068\ndip.noise_sigma_db = 0.012\ndip.hysteresis_db = 0.12\n";
    write(dir.path / "train_sim.cfg",
          "kind = quasi_static\nrepeats = 2\nseed = 11\n" + noisy_specs +
              "output = train.csv\n");
    cli::cmd_simulate(options(dir.path / "train_sim.cfg", dir.path));
    write(dir.path / "train.cfg", "input = " + (dir.path / "train.csv").string() + "\n");
    cli::cmd_detect_train(options(dir.path / "train.cfg", dir.path));
    REQUIRE(fs::exists(dir.path / "detector_model.txt"));

    write(dir.path / "contact_sim.cfg",
          "kind = contact\nseed = 12\ncontact_t_contact_s = 0.7\ncontact_t_release_s = 12.2\n"
          "contact_frozen_joints = pip,dip\n" +
              noisy_specs + "output = contact.csv\n");
    cli::cmd_simulate(options(dir.path / "contact_sim.cfg", dir.path));

    write(dir.path / "run.cfg", "input = " + (dir.path / "contact.csv").string() +
                                    "\nmodel = " +
                                    (dir.path / "detector_model.txt").string() + "\n");
    cli::cmd_detect_run(options(dir.path / "run.cfg", dir.path));

    const std::string events = slurp(dir.path / "events.csv");
    std::size_t onsets = 0, releases = 0, pos = 0;
    while ((pos = events.find("contact_onset", pos)) != std::string::npos) {
        ++onsets;
        pos += 13;
    }
    pos = 0;
    while ((pos = events.find("contact_release", pos)) != std::string::npos) {
        ++releases;
        pos += 15;
    }
    CHECK(onsets == 1);
    CHECK(releases == 1);
}

TEST_CASE("ancova command reports df_between = 8 for 9 sensors") {
    TempDir dir;
    std::string inputs;
    for (int finger = 0; finger < 3; ++finger) {
        const std::string name = "f" + std::to_string(finger) + ".csv";
        std::ostringstream cfg;
        cfg << "kind = quasi_static\nrepeats = 1\nseed = " << (100 + finger) << "\n";
        const double base = 0.05 + 0.004 * finger;
        cfg << "mcp.beta1_db_per_deg = " << base << "\n";
        cfg << "pip.beta1_db_per_deg = " << base + 0.006 << "\n";
        cfg << "dip.beta1_db_per_deg = " << base + 0.013 << "\n";
        cfg << "mcp.noise_sigma_db = 0.05\npip.noise_sigma_db = 0.05\ndip.noise_sigma_db = 0.05\n";
        cfg << "output = " << name << "\n";
        write(dir.path / ("sim" + std::to_string(finger) + ".cfg"), cfg.str());
        cli::cmd_simulate(options(dir.path / ("sim" + std::to_string(finger) + ".cfg"), dir.path));
        inputs += (inputs.empty() ? "" : ",") + (dir.path / name).string();
    }
    write(dir.path / "ancova.cfg", "inputs = " + inputs + "\n");
    cli::cmd_ancova(options(dir.path / "ancova.cfg", dir.path));
    const std::string report = slurp(dir.path / "ancova_report.csv");
    CHECK(report.find("f_stat,df_between,df_error,p_value,p_label") != std::string::npos);
    // One data row: f,8,df_error,p,label
    CHECK(report.find(",8,") != std::string::npos);
}

TEST_CASE("stress report flags injected decay but not drift-free cycles") {
    TempDir dir;
    write(dir.path / "sim.cfg",
          std::string("kind = stress\ncycles = 450\nseed = 3\n") + kNoiselessSpecs +
              "output = stress.csv\n");
    cli::cmd_simulate(options(dir.path / "sim.cfg", dir.path));
    write(dir.path / "report.cfg", "input = " + (dir.path / "stress.csv").string() + "\n");
    cli::cmd_stress_report(options(dir.path / "report.cfg", dir.path));
    const std::string summary = slurp(dir.path / "stress_summary.csv");
    CHECK(summary.find(",0\n") != std::string::npos);
    CHECK(summary.find(",1\n") == std::string::npos);

    write(dir.path / "sim_decay.cfg",
          std::string("kind = stress\ncycles = 450\nseed = 3\nsensitivity_decay = 0.05\n") +
              kNoiselessSpecs + "output = stress_decay.csv\n");
    cli::cmd_simulate(options(dir.path / "sim_decay.cfg", dir.path));
    write(dir.path / "report_decay.cfg",
          "input = " + (dir.path / "stress_decay.csv").string() + "\n");
    cli::cmd_stress_report(options(dir.path / "report_decay.cfg", dir.path));
    const std::string decayed = slurp(dir.path / "stress_summary.csv");
    CHECK(decayed.find(",1\n") != std::string::npos);
}

TEST_CASE("commands are deterministic and do not mutate inputs") {
    TempDir dir;
    write(dir.path / "sim.cfg", std::string("kind = quasi_static\nrepeats = 1\nseed = 5\n") +
                                    "mcp.noise_sigma_db = 0.1\npip.noise_sigma_db = 0.1\n"
                                    "dip.noise_sigma_db = 0.1\n" +
                                    kNoiselessSpecs);
    cli::cmd_simulate(options(dir.path / "sim.cfg", dir.path));
    const std::string first = slurp(dir.path / "trial.csv");
    cli::cmd_simulate(options(dir.path / "sim.cfg", dir.path));
    const std::string second = slurp(dir.path / "trial.csv");
    CHECK(first == second);

    const std::string config_before = slurp(dir.path / "sim.cfg");
    write(dir.path / "cal.cfg", "input = " + (dir.path / "trial.csv").string() + "\n");
    cli::cmd_calibrate(options(dir.path / "cal.cfg", dir.path));
    CHECK(slurp(dir.path / "trial.csv") == first);          // input untouched
    CHECK(slurp(dir.path / "sim.cfg") == config_before);    // config untouched
    const std::string report_first = slurp(dir.path / "calibration_report.csv");
    cli::cmd_calibrate(options(dir.path / "cal.cfg", dir.path));
    CHECK(slurp(dir.path / "calibration_report.csv") == report_first);
}

TEST_CASE("seed flag overrides the configured seed") {
    TempDir dir;
    write(dir.path / "sim.cfg", std::string("kind = quasi_static\nrepeats = 1\nseed = 5\n") +
                                    "mcp.noise_sigma_db = 0.1\n" + kNoiselessSpecs);
    cli::cmd_simulate(options(dir.path / "sim.cfg", dir.path));
    const std::string seeded_5 = slurp(dir.path / "trial.csv");

    cli::CliOptions opt = options(dir.path / "sim.cfg", dir.path);
    opt.seed = 6;
    cli::cmd_simulate(opt);
    CHECK(slurp(dir.path / "trial.csv") != seeded_5);
}

TEST_CASE("exit-code contract") {
    TempDir dir;
    SUBCASE("missing config file is a config error") {
        CHECK(cli::run_command("simulate", options(dir.path / "absent.cfg", dir.path)) ==
              cli::kExitConfig);
    }
    SUBCASE("unknown config key is a config error") {
        write(dir.path / "bad.cfg", "kind = quasi_static\nmystery = 1\n");
        CHECK(cli::run_command("simulate", options(dir.path / "bad.cfg", dir.path)) ==
              cli::kExitConfig);
    }
    SUBCASE("missing input file is a data error") {
        write(dir.path / "cal.cfg", "input = " + (dir.path / "absent.csv").string() + "\n");
        CHECK(cli::run_command("calibrate", options(dir.path / "cal.cfg", dir.path)) ==
              cli::kExitData);
    }
    SUBCASE("degenerate data is a degeneracy error") {
        // A trial log with constant pulley angle cannot be calibrated.
        std::string text(io::kTrialHeader);
        text += "\n";
        for (int i = 0; i < 8; ++i)
            text += io::format_double(i * 0.125) + ",0,0,0,0,100,100,100,loading\n";
        write(dir.path / "flat.csv", text);
        write(dir.path / "cal.cfg", "input = " + (dir.path / "flat.csv").string() + "\n");
        CHECK(cli::run_command("calibrate", options(dir.path / "cal.cfg", dir.path)) ==
              cli::kExitDegenerate);
    }
    SUBCASE("success is exit 0") {
        write(dir.path / "sim.cfg", std::string("kind = quasi_static\nrepeats = 1\n") +
                                        kNoiselessSpecs);
        CHECK(cli::run_command("simulate", options(dir.path / "sim.cfg", dir.path)) == 0);
    }
}
