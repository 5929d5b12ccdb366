#include "fingersense/commands.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include "fingersense/anomaly.hpp"
#include "fingersense/config.hpp"
#include "fingersense/csvio.hpp"
#include "fingersense/errors.hpp"
#include "fingersense/kinematics.hpp"
#include "fingersense/signal.hpp"
#include "fingersense/simfinger.hpp"
#include "fingersense/stats.hpp"

namespace fingersense::cli {

namespace {

KeyValueConfig load_config(const CliOptions& opt) {
    if (opt.config_path.empty()) throw ConfigError("--config is required");
    return KeyValueConfig::from_file(opt.config_path);
}

std::string header_for(const KeyValueConfig& cfg) {
    return io::report_header(io::hash_hex(io::fnv1a64(cfg.raw_text())));
}

std::filesystem::path out_path(const CliOptions& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return opt.out_dir / name;
}

std::array<double, 3> triple(KeyValueConfig& cfg, const std::string& key,
                             const std::array<double, 3>& fallback) {
    if (!cfg.has(key)) return fallback;
    const std::vector<double> v = cfg.get_double_list(key);
    if (v.size() != 3)
        throw ConfigError("config key '" + key + "': expected exactly 3 values");
    return {v[0], v[1], v[2]};
}

sim::SensorSpec sensor_from_config(KeyValueConfig& cfg, const std::string& prefix) {
    sim::SensorSpec spec;
    spec.beta0_db = cfg.get_double(prefix + ".beta0_db", spec.beta0_db);
    spec.beta1_db_per_deg = cfg.get_double(prefix + ".beta1_db_per_deg", spec.beta1_db_per_deg);
    spec.noise_sigma_db = cfg.get_double(prefix + ".noise_sigma_db", spec.noise_sigma_db);
    spec.hysteresis_offset_db =
        cfg.get_double(prefix + ".hysteresis_db", spec.hysteresis_offset_db);
    spec.i0_nw_cm2 = cfg.get_double(prefix + ".i0_nw_cm2", spec.i0_nw_cm2);
    return spec;
}

std::array<sim::SensorSpec, 3> specs_from_config(KeyValueConfig& cfg) {
    return {sensor_from_config(cfg, "mcp"), sensor_from_config(cfg, "pip"),
            sensor_from_config(cfg, "dip")};
}

sim::SimScenario scenario_from_config(KeyValueConfig& cfg, const CliOptions& opt) {
    sim::SimScenario s;
    const std::string kind = cfg.get_string("kind", "quasi_static");
    if (kind == "quasi_static") s.kind = sim::ScenarioKind::QuasiStaticSweep;
    else if (kind == "stress") s.kind = sim::ScenarioKind::StressCycles;
    else if (kind == "weighted") s.kind = sim::ScenarioKind::WeightedSweep;
    else if (kind == "contact") s.kind = sim::ScenarioKind::ContactEvent;
    else throw ConfigError("config key 'kind': unknown scenario kind '" + kind + "'");

    s.seed = cfg.get_u64("seed", s.seed);
    if (opt.seed) s.seed = *opt.seed;
    s.pulley_range_deg = cfg.get_double("pulley_range_deg", s.pulley_range_deg);
    s.pulley_step_deg = cfg.get_double("pulley_step_deg", s.pulley_step_deg);
    s.sample_rate_hz = cfg.get_double("sample_rate_hz", s.sample_rate_hz);
    s.repeats = static_cast<int>(cfg.get_int("repeats", s.repeats));
    s.records_per_step = static_cast<int>(cfg.get_int("records_per_step", s.records_per_step));
    s.coupling_weights = triple(cfg, "coupling_weights", s.coupling_weights);
    s.joint_limits_deg = triple(cfg, "joint_limits_deg", s.joint_limits_deg);
    s.pulley_to_joint_ratio = cfg.get_double("pulley_to_joint_ratio", s.pulley_to_joint_ratio);
    s.cycles = static_cast<int>(cfg.get_int("cycles", s.cycles));
    s.actuation_hz = cfg.get_double("actuation_hz", s.actuation_hz);
    s.sensitivity_decay = cfg.get_double("sensitivity_decay", s.sensitivity_decay);
    s.contact_step_deg = cfg.get_double("contact_step_deg", s.contact_step_deg);
    s.contact_pause_s = cfg.get_double("contact_pause_s", s.contact_pause_s);
    s.contact_tail_s = cfg.get_double("contact_tail_s", s.contact_tail_s);

    if (cfg.has("disturbance_gain") || cfg.has("disturbance_angle_shift_deg")) {
        sim::Disturbance d;
        d.gain = cfg.get_double("disturbance_gain", d.gain);
        d.angle_shift_deg = triple(cfg, "disturbance_angle_shift_deg", d.angle_shift_deg);
        s.disturbance = d;
    }
    if (s.kind == sim::ScenarioKind::ContactEvent || cfg.has("contact_t_contact_s")) {
        sim::ContactSpec c;
        c.t_contact_s = cfg.get_double("contact_t_contact_s", c.t_contact_s);
        c.t_release_s = cfg.get_double("contact_t_release_s", c.t_release_s);
        if (cfg.has("contact_frozen_joints")) {
            c.frozen_joints = {false, false, false};
            for (const std::string& name : cfg.get_string_list("contact_frozen_joints")) {
                if (name == "mcp") c.frozen_joints[0] = true;
                else if (name == "pip") c.frozen_joints[1] = true;
                else if (name == "dip") c.frozen_joints[2] = true;
                else throw ConfigError("config key 'contact_frozen_joints': unknown joint '" +
                                       name + "'");
            }
        }
        s.contact = c;
    }
    return s;
}

kin::ChainConfig chain_from_config(KeyValueConfig& cfg) {
    kin::ChainConfig chain;
    if (cfg.has("link_lengths_mm")) chain.link_lengths_mm = cfg.get_double_list("link_lengths_mm");
    return chain;
}

std::optional<std::array<double, 3>> i0_override_from_config(KeyValueConfig& cfg) {
    if (!cfg.has("i0_mcp") && !cfg.has("i0_pip") && !cfg.has("i0_dip")) return std::nullopt;
    if (!(cfg.has("i0_mcp") && cfg.has("i0_pip") && cfg.has("i0_dip")))
        throw ConfigError("i0 overrides must name all three sensors");
    return std::array<double, 3>{cfg.get_double("i0_mcp"), cfg.get_double("i0_pip"),
                                 cfg.get_double("i0_dip")};
}

struct LoadedModels {
    std::array<signal::JointCalibration, 3> multi;
    std::optional<std::array<signal::JointCalibration, 3>> single;
};

LoadedModels load_models(const std::filesystem::path& path) {
    const std::vector<io::CalibrationRow> rows = io::read_calibration_model(path);
    LoadedModels models;
    std::array<bool, 3> have_multi{false, false, false};
    std::array<signal::JointCalibration, 3> single{};
    std::array<bool, 3> have_single{false, false, false};
    for (const io::CalibrationRow& row : rows) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (row.sensor_id == kSensorNames[j]) {
                models.multi[j] = row.cal;
                have_multi[j] = true;
            }
            if (row.sensor_id == std::string("single_") + kSensorNames[j]) {
                single[j] = row.cal;
                have_single[j] = true;
            }
        }
    }
    if (!(have_multi[0] && have_multi[1] && have_multi[2]))
        throw DataError(path.string() + ": calibration model is missing mcp/pip/dip entries");
    if (have_single[0] && have_single[1] && have_single[2]) models.single = single;
    return models;
}

std::vector<Vec3> losses_from_log(const TrialLog& log,
                                  std::optional<std::array<double, 3>> i0_override) {
    std::array<double, 3> i0{};
    for (std::size_t j = 0; j < 3; ++j)
        i0[j] = i0_override ? (*i0_override)[j] : log.records.front().intensity[j];
    std::vector<Vec3> out;
    out.reserve(log.size());
    for (const TrialRecord& rec : log.records) {
        Vec3 z;
        for (std::size_t j = 0; j < 3; ++j) z[j] = signal::power_loss(rec.intensity[j], i0[j]);
        out.push_back(z);
    }
    return out;
}

}  // namespace

void cmd_simulate(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const sim::SimScenario scenario = scenario_from_config(cfg, opt);
    const std::array<sim::SensorSpec, 3> specs = specs_from_config(cfg);
    const std::string output = cfg.get_string("output", "trial.csv");
    cfg.reject_unknown();

    const TrialLog log = sim::run_scenario(scenario, specs);
    io::write_trial_csv(out_path(opt, output), log);
    std::cout << "simulate: wrote " << log.size() << " records to " << output << "\n";
}

void cmd_calibrate(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const std::string input = cfg.get_string("input");
    const std::string output_report = cfg.get_string("output_report", "calibration_report.csv");
    const std::string output_model = cfg.get_string("output_model", "calibration_model.txt");
    const bool fit_single = cfg.get_bool("fit_single", false);
    const bool plot_data = cfg.get_bool("plot_data", false);
    const std::optional<std::array<double, 3>> i0_override = i0_override_from_config(cfg);
    cfg.reject_unknown();

    const TrialLog log = io::read_trial_csv(input);
    std::vector<io::CalibrationRow> rows;
    std::vector<io::PlotSeries> plots;
    for (std::size_t j = 0; j < 3; ++j) {
        const auto [samples, i0] = signal::loss_samples(
            log, static_cast<SensorId>(j),
            i0_override ? std::optional<double>((*i0_override)[j]) : std::nullopt);
        rows.push_back({kSensorNames[j], signal::calibrate(samples, i0)});
        if (plot_data) {
            io::PlotSeries data;
            data.file = std::string("loss_vs_theta_") + kSensorNames[j] + ".csv";
            data.title = std::string("optical loss vs joint angle (") + kSensorNames[j] + ")";
            data.xlabel = "theta_deg";
            data.ylabel = "loss_db";
            for (const signal::LossSample& s : samples)
                data.points.emplace_back(s.theta_deg, s.loss_db);
            io::PlotSeries fitline;
            fitline.file = std::string("fit_") + kSensorNames[j] + ".csv";
            fitline.title = std::string("calibration line (") + kSensorNames[j] + ")";
            fitline.xlabel = "theta_deg";
            fitline.ylabel = "loss_db";
            const auto& cal = rows.back().cal;
            for (const signal::LossSample& s : samples)
                fitline.points.emplace_back(s.theta_deg,
                                            cal.beta0_db + cal.beta1_db_per_deg * s.theta_deg);
            plots.push_back(std::move(data));
            plots.push_back(std::move(fitline));
        }
    }
    if (fit_single) {
        for (std::size_t j = 0; j < 3; ++j) {
            const auto [samples, i0s] =
                signal::summed_loss_samples(log, static_cast<SensorId>(j), i0_override);
            io::CalibrationRow row;
            row.sensor_id = std::string("single_") + kSensorNames[j];
            row.cal = signal::calibrate(samples, i0s[j]);
            rows.push_back(row);
        }
    }

    const std::string header = header_for(cfg);
    io::write_calibration_report(out_path(opt, output_report), rows, header);
    io::write_calibration_model(out_path(opt, output_model), rows, header);
    if (plot_data) io::write_plot_series(opt.out_dir / "plots", plots, header);
    for (const io::CalibrationRow& row : rows)
        std::cout << "calibrate: " << row.sensor_id << " beta1=" << row.cal.beta1_db_per_deg
                  << " dB/deg linearity=" << row.cal.linearity_fsr_pct
                  << "% rms=" << row.cal.rms_error_deg
                  << " deg hysteresis=" << row.cal.hysteresis_fsr_pct << "%\n";
}

void cmd_estimate(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const std::string input = cfg.get_string("input");
    const std::string model_path = cfg.get_string("model");
    const std::string output = cfg.get_string("output", "estimates.csv");
    const kin::ChainConfig chain = chain_from_config(cfg);
    const bool clamp = opt.clamp || cfg.get_bool("clamp", false);
    const double theta_max = cfg.get_double("theta_max_deg", 90.0);
    std::string mode = cfg.get_string("mode", "auto");
    cfg.reject_unknown();

    const TrialLog log = io::read_trial_csv(input);
    const LoadedModels models = load_models(model_path);
    if (mode == "auto") mode = models.single ? "both" : "multi";
    const bool want_multi = mode == "multi" || mode == "both";
    const bool want_single = mode == "single" || mode == "both";
    if (!want_multi && !want_single)
        throw ConfigError("config key 'mode': expected multi, single, both, or auto");
    if (want_single && !models.single)
        throw DataError("estimate: model file has no single-sensor entries");

    std::vector<kin::Pose> truth;
    truth.reserve(log.size());
    for (const TrialRecord& rec : log.records)
        truth.push_back(kin::pose_from_angles(rec.theta_deg, chain));

    std::vector<kin::Pose> multi_poses, single_poses;
    if (want_multi) {
        std::array<double, 3> i0{models.multi[0].i0_nw_cm2, models.multi[1].i0_nw_cm2,
                                 models.multi[2].i0_nw_cm2};
        std::vector<std::array<double, 3>> losses;
        losses.reserve(log.size());
        for (const TrialRecord& rec : log.records) {
            std::array<double, 3> row;
            for (std::size_t j = 0; j < 3; ++j)
                row[j] = signal::power_loss(rec.intensity[j], i0[j]);
            losses.push_back(row);
        }
        multi_poses = kin::estimate_poses_multi(losses, models.multi, chain, clamp, theta_max);
    }
    if (want_single) {
        std::array<double, 3> i0{models.multi[0].i0_nw_cm2, models.multi[1].i0_nw_cm2,
                                 models.multi[2].i0_nw_cm2};
        std::vector<double> summed;
        summed.reserve(log.size());
        for (const TrialRecord& rec : log.records) {
            double s = 0.0;
            for (std::size_t j = 0; j < 3; ++j)
                s += signal::power_loss(rec.intensity[j], i0[j]);
            summed.push_back(s);
        }
        single_poses =
            kin::estimate_poses_single(summed, *models.single, chain, clamp, theta_max);
    }

    std::string out = header_for(cfg);
    if (want_multi)
        out += "# mean_err_multi_mm=" +
               io::format_double(kin::mean_fingertip_error(multi_poses, truth)) + "\n";
    if (want_single)
        out += "# mean_err_single_mm=" +
               io::format_double(kin::mean_fingertip_error(single_poses, truth)) + "\n";
    out += "t_s,x_true_mm,y_true_mm";
    if (want_multi) out += ",x_multi_mm,y_multi_mm,err_multi_mm";
    if (want_single) out += ",x_single_mm,y_single_mm,err_single_mm";
    out += '\n';
    for (std::size_t i = 0; i < log.size(); ++i) {
        out += io::format_double(log.records[i].t_s);
        out += ',' + io::format_double(truth[i].fingertip.x_mm);
        out += ',' + io::format_double(truth[i].fingertip.y_mm);
        if (want_multi) {
            out += ',' + io::format_double(multi_poses[i].fingertip.x_mm);
            out += ',' + io::format_double(multi_poses[i].fingertip.y_mm);
            out += ',' + io::format_double(kin::fingertip_error(multi_poses[i], truth[i]));
        }
        if (want_single) {
            out += ',' + io::format_double(single_poses[i].fingertip.x_mm);
            out += ',' + io::format_double(single_poses[i].fingertip.y_mm);
            out += ',' + io::format_double(kin::fingertip_error(single_poses[i], truth[i]));
        }
        out += '\n';
    }
    std::ofstream file(out_path(opt, output), std::ios::binary);
    if (!file) throw DataError("cannot write estimates file");
    file << out;

    if (want_multi)
        std::cout << "estimate: mean fingertip error (multi) = "
                  << kin::mean_fingertip_error(multi_poses, truth) << " mm\n";
    if (want_single)
        std::cout << "estimate: mean fingertip error (single) = "
                  << kin::mean_fingertip_error(single_poses, truth) << " mm\n";
}

void cmd_detect_train(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const std::string input = cfg.get_string("input");
    const std::string output = cfg.get_string("output", "detector_model.txt");
    double cutoff = cfg.get_double("cutoff", 0.9);
    double alpha = cfg.get_double("alpha", 0.90);
    if (opt.cutoff) cutoff = *opt.cutoff;
    if (opt.alpha) alpha = *opt.alpha;
    const std::optional<std::array<double, 3>> i0_override = i0_override_from_config(cfg);
    cfg.reject_unknown();

    const TrialLog log = io::read_trial_csv(input);
    const std::vector<Vec3> losses = losses_from_log(log, i0_override);
    const anomaly::PcaDetector detector = anomaly::train_detector(losses, cutoff, alpha);
    anomaly::save_detector(out_path(opt, output), detector, header_for(cfg));
    const double total =
        detector.eigenvalues[0] + detector.eigenvalues[1] + detector.eigenvalues[2];
    std::cout << "detect-train: beta=" << detector.beta
              << " explained=" << 100.0 * detector.eigenvalues[0] / total
              << "% j_th=" << detector.j_th << "\n";
}

void cmd_detect_run(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const std::string input = cfg.get_string("input");
    const std::string model_path = cfg.get_string("model");
    const std::string output = cfg.get_string("output", "events.csv");
    int debounce = static_cast<int>(cfg.get_int("debounce", 1));
    if (opt.debounce) debounce = *opt.debounce;
    const bool plot_data = cfg.get_bool("plot_data", false);
    const std::optional<std::array<double, 3>> i0_override = i0_override_from_config(cfg);
    cfg.reject_unknown();

    const TrialLog log = io::read_trial_csv(input);
    const anomaly::PcaDetector detector = anomaly::load_detector(model_path);
    const std::vector<Vec3> losses = losses_from_log(log, i0_override);
    std::vector<double> t;
    t.reserve(log.size());
    for (const TrialRecord& rec : log.records) t.push_back(rec.t_s);

    const std::vector<anomaly::DetectionEvent> events =
        anomaly::detect_stream(t, losses, detector, debounce);
    const std::string header = header_for(cfg);
    io::write_events_csv(out_path(opt, output), events, header);

    std::size_t onsets = 0, releases = 0;
    for (const anomaly::DetectionEvent& ev : events) {
        if (ev.transition == anomaly::Transition::ContactOnset) ++onsets;
        if (ev.transition == anomaly::Transition::ContactRelease) ++releases;
    }
    if (plot_data) {
        io::PlotSeries q_series{"q_statistic.csv", "Q statistic", "t_s", "q", {}};
        io::PlotSeries th_series{"q_threshold.csv", "detection threshold", "t_s", "j_th", {}};
        for (const anomaly::DetectionEvent& ev : events) {
            q_series.points.emplace_back(ev.t_s, ev.q);
            th_series.points.emplace_back(ev.t_s, ev.threshold);
        }
        const std::array<io::PlotSeries, 2> plots{std::move(q_series), std::move(th_series)};
        io::write_plot_series(opt.out_dir / "plots", plots, header);
    }
    std::cout << "detect-run: onsets=" << onsets << " releases=" << releases << "\n";
}

void cmd_stress_report(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const std::string input = cfg.get_string("input");
    const double actuation_hz = cfg.get_double("actuation_hz", 1.46);
    const double drift_threshold_pct = cfg.get_double("drift_threshold_pct", 1.0);
    const std::string output_amplitudes = cfg.get_string("output_amplitudes", "stress_amplitudes.csv");
    const std::string output_summary = cfg.get_string("output_summary", "stress_summary.csv");
    cfg.reject_unknown();

    const TrialLog log = io::read_trial_csv(input);
    std::vector<double> t;
    t.reserve(log.size());
    for (const TrialRecord& rec : log.records) t.push_back(rec.t_s);
    const std::vector<std::size_t> starts = signal::cycle_starts_from_times(t, actuation_hz);

    std::array<std::vector<double>, 3> amplitudes;
    std::string summary = header_for(cfg);
    summary += "sensor_id,cycles,mean_amplitude,trend_slope_per_cycle,rel_drift_pct,drift_detected\n";
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<signal::RawReading> readings;
        readings.reserve(log.size());
        for (const TrialRecord& rec : log.records)
            readings.push_back({rec.t_s, static_cast<SensorId>(j), rec.intensity[j]});
        amplitudes[j] = signal::normalized_cycle_amplitudes(readings, starts);

        std::vector<signal::LossSample> trend;
        trend.reserve(amplitudes[j].size());
        for (std::size_t c = 0; c < amplitudes[j].size(); ++c)
            trend.push_back({static_cast<double>(c), amplitudes[j][c], Phase::Loading});
        const signal::FitLine fit = signal::fit_line(trend);
        double mean_amp = 0.0;
        for (double a : amplitudes[j]) mean_amp += a;
        mean_amp /= static_cast<double>(amplitudes[j].size());
        const double rel_drift_pct =
            std::fabs(fit.beta1_db_per_deg) * static_cast<double>(amplitudes[j].size()) /
            mean_amp * 100.0;
        summary += std::string(kSensorNames[j]) + "," + std::to_string(amplitudes[j].size()) +
                   "," + io::format_double(mean_amp) + "," +
                   io::format_double(fit.beta1_db_per_deg) + "," +
                   io::format_double(rel_drift_pct) + "," +
                   (rel_drift_pct >= drift_threshold_pct ? "1" : "0") + "\n";
    }

    std::string amps = header_for(cfg);
    amps += "cycle,amp_mcp,amp_pip,amp_dip\n";
    for (std::size_t c = 0; c < amplitudes[0].size(); ++c) {
        amps += std::to_string(c);
        for (std::size_t j = 0; j < 3; ++j) amps += "," + io::format_double(amplitudes[j][c]);
        amps += '\n';
    }
    std::ofstream amp_file(out_path(opt, output_amplitudes), std::ios::binary);
    if (!amp_file) throw DataError("cannot write stress amplitudes file");
    amp_file << amps;
    std::ofstream sum_file(out_path(opt, output_summary), std::ios::binary);
    if (!sum_file) throw DataError("cannot write stress summary file");
    sum_file << summary;
    std::cout << "stress-report: " << amplitudes[0].size() << " cycles\n";
}

void cmd_ancova(const CliOptions& opt) {
    KeyValueConfig cfg = load_config(opt);
    const std::vector<std::string> inputs = cfg.get_string_list("inputs");
    const std::string model_name = cfg.get_string("model", "separate");
    const std::string output = cfg.get_string("output", "ancova_report.csv");
    cfg.reject_unknown();

    stats::AncovaModel model;
    if (model_name == "separate") model = stats::AncovaModel::SeparateLines;
    else if (model_name == "common") model = stats::AncovaModel::CommonSlope;
    else throw ConfigError("config key 'model': expected 'separate' or 'common'");

    std::vector<std::vector<signal::LossSample>> groups;
    for (const std::string& path : inputs) {
        const TrialLog log = io::read_trial_csv(path);
        for (std::size_t j = 0; j < 3; ++j)
            groups.push_back(
                signal::loss_samples(log, static_cast<SensorId>(j)).first);
    }
    std::vector<std::span<const signal::LossSample>> views;
    views.reserve(groups.size());
    for (const auto& g : groups) views.emplace_back(g);

    const stats::AncovaResult result = stats::ancova_f(views, model);
    std::string out = header_for(cfg);
    out += "f_stat,df_between,df_error,p_value,p_label\n";
    out += io::format_double(result.f_stat) + "," + std::to_string(result.df_between) + "," +
           std::to_string(result.df_error) + "," + io::format_double(result.p_value) + "," +
           stats::format_p_value(result.p_value) + "\n";
    std::ofstream file(out_path(opt, output), std::ios::binary);
    if (!file) throw DataError("cannot write ancova report");
    file << out;
    std::cout << "ancova: F(" << result.df_between << ", " << result.df_error
              << ") = " << result.f_stat << ", p " << stats::format_p_value(result.p_value)
              << "\n";
}

int run_command(const std::string& name, const CliOptions& opt) {
    try {
        if (name == "simulate") cmd_simulate(opt);
        else if (name == "calibrate") cmd_calibrate(opt);
        else if (name == "estimate") cmd_estimate(opt);
        else if (name == "detect-train") cmd_detect_train(opt);
        else if (name == "detect-run") cmd_detect_run(opt);
        else if (name == "stress-report") cmd_stress_report(opt);
        else if (name == "ancova") cmd_ancova(opt);
        else throw ConfigError("unknown command: " + name);
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "fingersense: error kind=config code=" << kExitConfig << ": " << e.what()
                  << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "fingersense: error kind=data code=" << kExitData << ": " << e.what()
                  << "\n";
        return kExitData;
    } catch (const DegenerateError& e) {
        std::cerr << "fingersense: error kind=degenerate code=" << kExitDegenerate << ": "
                  << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "fingersense: error kind=internal code=1: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fingersense::cli
