#include "fingersense/csvio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fingersense/config.hpp"
#include "fingersense/errors.hpp"
#include "fingersense/version.hpp"

namespace fingersense::io {

namespace {

constexpr std::array<const char*, 9> kTrialColumns{
    "t_s",          "pulley_deg",   "theta_mcp_deg", "theta_pip_deg", "theta_dip_deg",
    "i_mcp_nw_cm2", "i_pip_nw_cm2", "i_dip_nw_cm2",  "phase"};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (begin <= line.size()) {
        const std::size_t comma = line.find(',', begin);
        const std::size_t end = comma == std::string::npos ? line.size() : comma;
        fields.push_back(line.substr(begin, end - begin));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return fields;
}

double parse_cell(const std::string& cell, std::size_t lineno, const char* column) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("line " + std::to_string(lineno) + ", column " + column +
                        ": malformed value '" + cell + "'");
    if (!std::isfinite(out))
        throw DataError("line " + std::to_string(lineno) + ", column " + column +
                        ": non-finite value '" + cell + "'");
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write file: " + path.string());
    file << content;
    if (!file) throw DataError("failed while writing file: " + path.string());
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw DataError("failed to format a number");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char ch : bytes) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x00000100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_header(std::string_view config_hash_hex) {
    std::string out = "# fingersense ";
    out += kVersion;
    out += "\n# config_hash=";
    out += config_hash_hex;
    out += "\n";
    return out;
}

std::string trial_to_csv(const TrialLog& log) {
    std::string out = kTrialHeader;
    out += '\n';
    for (const TrialRecord& rec : log.records) {
        out += format_double(rec.t_s);
        out += ',';
        out += format_double(rec.pulley_deg);
        for (std::size_t j = 0; j < 3; ++j) {
            out += ',';
            out += format_double(rec.theta_deg[j]);
        }
        for (std::size_t j = 0; j < 3; ++j) {
            out += ',';
            out += format_double(rec.intensity[j]);
        }
        out += ',';
        out += (rec.phase == Phase::Loading) ? "loading" : "unloading";
        out += '\n';
    }
    return out;
}

void write_trial_csv(const std::filesystem::path& path, const TrialLog& log) {
    write_file(path, trial_to_csv(log));
}

TrialLog trial_from_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw DataError(origin + ": empty trial file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrialHeader)
        throw DataError(origin + ": line 1: header does not match the trial schema");

    TrialLog log;
    std::vector<bool> has_phase;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != kTrialColumns.size())
            throw DataError(origin + ": line " + std::to_string(lineno) + ": expected " +
                            std::to_string(kTrialColumns.size()) + " fields, got " +
                            std::to_string(fields.size()));
        TrialRecord rec;
        rec.t_s = parse_cell(fields[0], lineno, kTrialColumns[0]);
        rec.pulley_deg = parse_cell(fields[1], lineno, kTrialColumns[1]);
        for (std::size_t j = 0; j < 3; ++j)
            rec.theta_deg[j] = parse_cell(fields[2 + j], lineno, kTrialColumns[2 + j]);
        for (std::size_t j = 0; j < 3; ++j) {
            rec.intensity[j] = parse_cell(fields[5 + j], lineno, kTrialColumns[5 + j]);
            if (rec.intensity[j] < 0.0)
                throw DataError(origin + ": line " + std::to_string(lineno) + ", column " +
                                kTrialColumns[5 + j] + ": negative intensity");
        }
        const std::string& phase = fields[8];
        if (phase == "loading") {
            rec.phase = Phase::Loading;
            has_phase.push_back(true);
        } else if (phase == "unloading") {
            rec.phase = Phase::Unloading;
            has_phase.push_back(true);
        } else if (phase.empty()) {
            has_phase.push_back(false);
        } else {
            throw DataError(origin + ": line " + std::to_string(lineno) +
                            ", column phase: unknown phase '" + phase + "'");
        }
        if (!log.records.empty() && !(rec.t_s > log.records.back().t_s))
            throw DataError(origin + ": line " + std::to_string(lineno) +
                            ": stream-order: t_s must be strictly increasing");
        log.records.push_back(rec);
    }

    // Fill missing phases from the sign of the pulley increment; ties carry
    // the previous phase, and the log starts in loading.
    Phase prev = Phase::Loading;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        if (!has_phase[i]) {
            if (i > 0) {
                const double delta = log.records[i].pulley_deg - log.records[i - 1].pulley_deg;
                log.records[i].phase =
                    delta > 0.0 ? Phase::Loading : (delta < 0.0 ? Phase::Unloading : prev);
            } else {
                log.records[i].phase = Phase::Loading;
            }
        }
        prev = log.records[i].phase;
    }
    return log;
}

TrialLog read_trial_csv(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot open trial file: " + path.string());
    std::ostringstream buf;
    buf << file.rdbuf();
    return trial_from_csv(buf.str(), path.string());
}

void write_calibration_report(const std::filesystem::path& path,
                              std::span<const CalibrationRow> rows,
                              const std::string& header_comment) {
    std::string out = header_comment;
    out += kCalibrationHeader;
    out += '\n';
    for (const CalibrationRow& row : rows) {
        out += row.sensor_id;
        out += ',';
        out += format_double(row.cal.beta0_db);
        out += ',';
        out += format_double(row.cal.beta1_db_per_deg);
        out += ',';
        out += format_double(row.cal.sensitivity_db_per_deg);
        out += ',';
        out += format_double(row.cal.linearity_fsr_pct);
        out += ',';
        out += format_double(row.cal.rms_error_deg);
        out += ',';
        out += format_double(row.cal.hysteresis_fsr_pct);
        out += '\n';
    }
    write_file(path, out);
}

void write_calibration_model(const std::filesystem::path& path,
                             std::span<const CalibrationRow> rows,
                             const std::string& header_comment) {
    std::string out = "# fingersense calibration model v1\n";
    out += header_comment;
    std::string order;
    for (const CalibrationRow& row : rows) {
        order += (order.empty() ? "" : ",") + row.sensor_id;
        const std::string& id = row.sensor_id;
        out += id + ".beta0_db = " + fmt17(row.cal.beta0_db) + "\n";
        out += id + ".beta1_db_per_deg = " + fmt17(row.cal.beta1_db_per_deg) + "\n";
        out += id + ".i0_nw_cm2 = " + fmt17(row.cal.i0_nw_cm2) + "\n";
        out += id + ".n_samples = " + std::to_string(row.cal.n_samples) + "\n";
        out += id + ".linearity_pct = " + fmt17(row.cal.linearity_fsr_pct) + "\n";
        out += id + ".rms_deg = " + fmt17(row.cal.rms_error_deg) + "\n";
        out += id + ".hysteresis_pct = " + fmt17(row.cal.hysteresis_fsr_pct) + "\n";
        out += id + ".fsr_db = " + fmt17(row.cal.fsr_db) + "\n";
        out += id + ".peak_abs_loss_db = " + fmt17(row.cal.peak_abs_loss_db) + "\n";
    }
    out = "# sensors = " + order + "\n" + out;
    write_file(path, out);
}

std::vector<CalibrationRow> read_calibration_model(const std::filesystem::path& path) {
    std::ifstream probe(path);
    if (!probe) throw DataError("cannot open calibration model: " + path.string());
    std::string sensors_line;
    std::getline(probe, sensors_line);
    probe.close();
    const std::string prefix = "# sensors = ";
    if (sensors_line.rfind(prefix, 0) != 0)
        throw DataError(path.string() + ": missing sensor list header");

    KeyValueConfig cfg = KeyValueConfig::from_file(path);
    std::vector<CalibrationRow> rows;
    std::istringstream ids(sensors_line.substr(prefix.size()));
    std::string id;
    while (std::getline(ids, id, ',')) {
        while (!id.empty() && id.back() == '\r') id.pop_back();
        CalibrationRow row;
        row.sensor_id = id;
        row.cal.beta0_db = cfg.get_double(id + ".beta0_db");
        row.cal.beta1_db_per_deg = cfg.get_double(id + ".beta1_db_per_deg");
        row.cal.sensitivity_db_per_deg = row.cal.beta1_db_per_deg;
        row.cal.i0_nw_cm2 = cfg.get_double(id + ".i0_nw_cm2");
        row.cal.n_samples = static_cast<std::size_t>(cfg.get_int(id + ".n_samples", 0));
        row.cal.linearity_fsr_pct = cfg.get_double(id + ".linearity_pct", 0.0);
        row.cal.rms_error_deg = cfg.get_double(id + ".rms_deg", 0.0);
        row.cal.hysteresis_fsr_pct = cfg.get_double(id + ".hysteresis_pct", 0.0);
        row.cal.fsr_db = cfg.get_double(id + ".fsr_db", 0.0);
        row.cal.peak_abs_loss_db = cfg.get_double(id + ".peak_abs_loss_db", 0.0);
        rows.push_back(row);
    }
    cfg.reject_unknown();
    if (rows.empty()) throw DataError(path.string() + ": no sensors in calibration model");
    return rows;
}

void write_events_csv(const std::filesystem::path& path,
                      std::span<const anomaly::DetectionEvent> events,
                      const std::string& header_comment) {
    std::string out = header_comment;
    out += kEventsHeader;
    out += '\n';
    for (const anomaly::DetectionEvent& ev : events) {
        out += format_double(ev.t_s);
        out += ',';
        out += format_double(ev.q);
        out += ',';
        out += format_double(ev.threshold);
        out += ',';
        out += (ev.state == anomaly::ContactState::Contact) ? "contact" : "free";
        out += ',';
        switch (ev.transition) {
            case anomaly::Transition::ContactOnset: out += "contact_onset"; break;
            case anomaly::Transition::ContactRelease: out += "contact_release"; break;
            case anomaly::Transition::None: break;
        }
        out += '\n';
    }
    write_file(path, out);
}

void write_plot_series(const std::filesystem::path& dir, std::span<const PlotSeries> series,
                       const std::string& header_comment) {
    std::filesystem::create_directories(dir);
    std::string manifest = header_comment;
    manifest += "file,title,xlabel,ylabel\n";
    for (const PlotSeries& s : series) {
        std::string out = header_comment;
        out += "x,y\n";
        for (const auto& [x, y] : s.points) {
            out += format_double(x);
            out += ',';
            out += format_double(y);
            out += '\n';
        }
        write_file(dir / s.file, out);
        manifest += s.file + "," + s.title + "," + s.xlabel + "," + s.ylabel + "\n";
    }
    write_file(dir / "manifest.csv", manifest);
}

}  // namespace fingersense::io
