#pragma once

// Per-sensor signal processing: optical power loss conversion, closed-form
// least-squares calibration, and the quality metrics reported for each
// joint sensor (sensitivity, linearity, RMS repeatability, hysteresis,
// cycle amplitudes).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fingersense/kernels.hpp"
#include "fingersense/trial_log.hpp"

namespace fingersense::signal {

using kernels::ExecMode;

struct RawReading {
    double t_s = 0.0;
    SensorId sensor = SensorId::MCP;
    double intensity = 0.0;  // nW/cm^2, >= 0
};

struct LossSample {
    double theta_deg = 0.0;
    double loss_db = 0.0;
    Phase phase = Phase::Loading;
};

struct FitLine {
    double beta0_db = 0.0;
    double beta1_db_per_deg = 0.0;
};

/// Fitted calibration line plus the quality metrics for one joint sensor.
/// `fsr_db` is max(y)-min(y) over the trial (used by the hysteresis
/// percentage); `peak_abs_loss_db` is max|y| (used by the linearity
/// percentage). The two full-scale conventions are deliberately kept
/// distinct and both reported.
struct JointCalibration {
    double beta0_db = 0.0;
    double beta1_db_per_deg = 0.0;
    double i0_nw_cm2 = 0.0;
    std::size_t n_samples = 0;
    double sensitivity_db_per_deg = 0.0;  // = beta1
    double linearity_fsr_pct = 0.0;
    double rms_error_deg = 0.0;
    double hysteresis_fsr_pct = 0.0;
    double fsr_db = 0.0;
    double peak_abs_loss_db = 0.0;
};

/// Optical power loss in dB: -10*log10(intensity/i0). Negative when the
/// intensity exceeds the reference (intensity gain).
double power_loss(double intensity_nw_cm2, double i0_nw_cm2);

/// Closed-form least-squares line y = beta0 + beta1*theta, centered on
/// mean(theta) to avoid cancellation. Requires >= 2 samples with >= 2
/// distinct theta values.
FitLine fit_line(std::span<const LossSample> samples, ExecMode mode = ExecMode::Auto);

/// Linearity as a percentage of full scale range:
/// (1 - max|y - yhat| / max|y|) * 100.
double linearity_fsr(std::span<const LossSample> samples, double beta0, double beta1,
                     ExecMode mode = ExecMode::Auto);

/// RMS repeatability mapped to degrees:
/// (1/|beta1|) * sqrt(sum (y - yhat)^2 / (N - 1)).
double rms_error_deg(std::span<const LossSample> samples, double beta0, double beta1,
                     ExecMode mode = ExecMode::Auto);

/// |mean(y | loading) - mean(y | unloading)| / (max y - min y) * 100.
/// Means are taken globally over each phase, not per matched angle bin.
double hysteresis_fsr(std::span<const LossSample> samples, ExecMode mode = ExecMode::Auto);

/// Normalized amplitude (Imax - Imin) / Imax of each cycle. `cycle_starts`
/// holds the index of the first reading of each cycle; cycle c spans
/// [cycle_starts[c], cycle_starts[c+1]).
std::vector<double> normalized_cycle_amplitudes(std::span<const RawReading> readings,
                                                std::span<const std::size_t> cycle_starts);

/// Cycle boundaries for a periodic actuation: a new cycle starts whenever
/// floor(t * actuation_hz) increments.
std::vector<std::size_t> cycle_starts_from_times(std::span<const double> t_s,
                                                 double actuation_hz);

/// Fit plus all quality metrics in one pass over a sensor's sweep data.
JointCalibration calibrate(std::span<const LossSample> samples, double i0_nw_cm2,
                           ExecMode mode = ExecMode::Auto);

/// Loss samples for one joint of a trial log. The loss reference defaults
/// to the first raw reading of the log; pass `i0_override` for ingested
/// logs without a clean start. Returns the samples and the reference used.
std::pair<std::vector<LossSample>, double> loss_samples(const TrialLog& log, SensorId sensor,
                                                        std::optional<double> i0_override = {});

/// Summed loss across the three sensors per record, emulating one fiber
/// routed along the whole finger (losses in series add in dB). Same i0
/// convention as `loss_samples`, applied per sensor; `theta_deg` of the
/// returned samples is the joint selected by `target_joint`.
std::pair<std::vector<LossSample>, std::array<double, 3>> summed_loss_samples(
    const TrialLog& log, SensorId target_joint,
    std::optional<std::array<double, 3>> i0_override = {});

}  // namespace fingersense::signal
