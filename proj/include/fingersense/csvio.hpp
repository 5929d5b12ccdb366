#pragma once

// Trial CSV schema (bit-exact):
//   t_s,pulley_deg,theta_mcp_deg,theta_pip_deg,theta_dip_deg,
//   i_mcp_nw_cm2,i_pip_nw_cm2,i_dip_nw_cm2,phase
// UTF-8, comma separated, '.' decimal; phase is "loading", "unloading", or
// empty (derived from the sign of the pulley angle increment on ingest).
// Numbers are emitted in shortest exact round-trip form.

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fingersense/anomaly.hpp"
#include "fingersense/signal.hpp"
#include "fingersense/trial_log.hpp"

namespace fingersense::io {

inline constexpr const char* kTrialHeader =
    "t_s,pulley_deg,theta_mcp_deg,theta_pip_deg,theta_dip_deg,"
    "i_mcp_nw_cm2,i_pip_nw_cm2,i_dip_nw_cm2,phase";

inline constexpr const char* kCalibrationHeader =
    "sensor_id,beta0_db,beta1_db_per_deg,sensitivity,linearity_pct,rms_deg,hysteresis_pct";

inline constexpr const char* kEventsHeader = "t_s,q,threshold,state,transition";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// FNV-1a 64-bit hash, used for config provenance in report headers.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

/// Comment header stamped on report files: tool version plus config hash.
std::string report_header(std::string_view config_hash_hex);

std::string trial_to_csv(const TrialLog& log);
void write_trial_csv(const std::filesystem::path& path, const TrialLog& log);

/// Parse and validate a trial CSV. Malformed cells raise DataError naming
/// the 1-based file line and column; non-finite or negative intensities are
/// rejected; timestamps must be strictly increasing. Missing phase cells
/// are derived from the pulley angle increments (ties carry the previous
/// phase).
TrialLog read_trial_csv(const std::filesystem::path& path);
TrialLog trial_from_csv(const std::string& text, const std::string& origin = "<string>");

struct CalibrationRow {
    std::string sensor_id;
    signal::JointCalibration cal;
};

void write_calibration_report(const std::filesystem::path& path,
                              std::span<const CalibrationRow> rows,
                              const std::string& header_comment);

/// Calibration model file: everything estimation needs (beta0, beta1 and
/// the loss reference i0 per sensor), plain key-value text at 17
/// significant digits. The report CSV above is the metrics view; this file
/// is the machine artifact consumed by the estimate command.
void write_calibration_model(const std::filesystem::path& path,
                             std::span<const CalibrationRow> rows,
                             const std::string& header_comment);
std::vector<CalibrationRow> read_calibration_model(const std::filesystem::path& path);

void write_events_csv(const std::filesystem::path& path,
                      std::span<const anomaly::DetectionEvent> events,
                      const std::string& header_comment);

/// Two-column plot series plus manifest row, for figure reproduction
/// without a graphics dependency.
struct PlotSeries {
    std::string file;
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<std::pair<double, double>> points;
};

void write_plot_series(const std::filesystem::path& dir, std::span<const PlotSeries> series,
                       const std::string& header_comment);

}  // namespace fingersense::io
