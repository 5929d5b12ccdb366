#include "fingersense/signal.hpp"

#include <cmath>
#include <string>

#include "fingersense/errors.hpp"

namespace fingersense::signal {

namespace k = fingersense::kernels;

double power_loss(double intensity_nw_cm2, double i0_nw_cm2) {
    if (!(intensity_nw_cm2 > 0.0) || !std::isfinite(intensity_nw_cm2))
        throw DataError("power_loss: intensity must be positive and finite, got " +
                        std::to_string(intensity_nw_cm2));
    if (!(i0_nw_cm2 > 0.0) || !std::isfinite(i0_nw_cm2))
        throw DataError("power_loss: i0 must be positive and finite, got " +
                        std::to_string(i0_nw_cm2));
    return -10.0 * std::log10(intensity_nw_cm2 / i0_nw_cm2);
}

FitLine fit_line(std::span<const LossSample> samples, ExecMode mode) {
    const std::size_t n = samples.size();
    if (n < 2) throw DegenerateError("insufficient-data: fit_line needs at least 2 samples");

    const k::MinMax trange =
        k::min_max(n, [&](std::size_t i) { return samples[i].theta_deg; }, mode);
    const double theta_span = trange.max - trange.min;
    if (!(theta_span > 1e-12 * std::max({std::fabs(trange.max), std::fabs(trange.min), 1.0})))
        throw DegenerateError("singular-design: fit_line needs at least 2 distinct theta values");

    const k::SumPair totals = k::sum_pair(
        n, [&](std::size_t i) { return k::SumPair{samples[i].theta_deg, samples[i].loss_db}; },
        mode);
    const double mean_theta = totals.a / static_cast<double>(n);
    const double mean_loss = totals.b / static_cast<double>(n);

    const k::SumPair moments = k::sum_pair(
        n,
        [&](std::size_t i) {
            const double dt = samples[i].theta_deg - mean_theta;
            const double dy = samples[i].loss_db - mean_loss;
            return k::SumPair{dt * dt, dt * dy};
        },
        mode);

    FitLine fit;
    fit.beta1_db_per_deg = moments.b / moments.a;
    fit.beta0_db = mean_loss - fit.beta1_db_per_deg * mean_theta;
    return fit;
}

double linearity_fsr(std::span<const LossSample> samples, double beta0, double beta1,
                     ExecMode mode) {
    const std::size_t n = samples.size();
    if (n == 0) throw DegenerateError("insufficient-data: linearity needs samples");
    const double max_abs_resid = k::max_abs(
        n,
        [&](std::size_t i) {
            return samples[i].loss_db - (beta0 + beta1 * samples[i].theta_deg);
        },
        mode);
    const double max_abs_loss =
        k::max_abs(n, [&](std::size_t i) { return samples[i].loss_db; }, mode);
    if (max_abs_loss == 0.0)
        throw DegenerateError("degenerate-range: linearity undefined when max|y| is zero");
    return (1.0 - max_abs_resid / max_abs_loss) * 100.0;
}

double rms_error_deg(std::span<const LossSample> samples, double beta0, double beta1,
                     ExecMode mode) {
    const std::size_t n = samples.size();
    if (beta1 == 0.0)
        throw DegenerateError("zero-sensitivity: RMS in degrees undefined for beta1 = 0");
    if (n < 2) throw DegenerateError("insufficient-data: rms_error_deg needs at least 2 samples");
    const double ss = k::sum(
        n,
        [&](std::size_t i) {
            const double r = samples[i].loss_db - (beta0 + beta1 * samples[i].theta_deg);
            return r * r;
        },
        mode);
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::fabs(beta1);
}

namespace {

struct PhaseAcc {
    double sum_loading = 0.0;
    double sum_unloading = 0.0;
    std::size_t n_loading = 0;
    std::size_t n_unloading = 0;
};

}  // namespace

double hysteresis_fsr(std::span<const LossSample> samples, ExecMode mode) {
    const std::size_t n = samples.size();
    if (n == 0) throw DegenerateError("insufficient-data: hysteresis needs samples");
    const PhaseAcc acc = k::blocked_reduce<PhaseAcc>(
        n, PhaseAcc{},
        [&](std::size_t lo, std::size_t hi) {
            PhaseAcc a;
            for (std::size_t i = lo; i < hi; ++i) {
                if (samples[i].phase == Phase::Loading) {
                    a.sum_loading += samples[i].loss_db;
                    ++a.n_loading;
                } else {
                    a.sum_unloading += samples[i].loss_db;
                    ++a.n_unloading;
                }
            }
            return a;
        },
        [](PhaseAcc x, PhaseAcc y) {
            return PhaseAcc{x.sum_loading + y.sum_loading, x.sum_unloading + y.sum_unloading,
                            x.n_loading + y.n_loading, x.n_unloading + y.n_unloading};
        },
        mode);
    if (acc.n_loading == 0 || acc.n_unloading == 0)
        throw DataError("missing-phase: hysteresis needs both loading and unloading samples");
    const k::MinMax range =
        k::min_max(n, [&](std::size_t i) { return samples[i].loss_db; }, mode);
    const double fsr = range.max - range.min;
    if (fsr == 0.0)
        throw DegenerateError("degenerate-range: hysteresis undefined for zero full scale range");
    const double mean_loading = acc.sum_loading / static_cast<double>(acc.n_loading);
    const double mean_unloading = acc.sum_unloading / static_cast<double>(acc.n_unloading);
    return std::fabs(mean_loading - mean_unloading) / fsr * 100.0;
}

std::vector<double> normalized_cycle_amplitudes(std::span<const RawReading> readings,
                                                std::span<const std::size_t> cycle_starts) {
    if (cycle_starts.empty())
        throw DataError("normalized_cycle_amplitudes: no cycle boundaries given");
    for (std::size_t c = 0; c + 1 < cycle_starts.size(); ++c)
        if (cycle_starts[c] >= cycle_starts[c + 1])
            throw DataError("normalized_cycle_amplitudes: cycle boundaries must increase");
    if (cycle_starts.back() >= readings.size())
        throw DataError("normalized_cycle_amplitudes: cycle boundary beyond readings");

    std::vector<double> amplitudes;
    amplitudes.reserve(cycle_starts.size());
    for (std::size_t c = 0; c < cycle_starts.size(); ++c) {
        const std::size_t lo = cycle_starts[c];
        const std::size_t hi = (c + 1 < cycle_starts.size()) ? cycle_starts[c + 1] : readings.size();
        if (hi - lo < 2)
            throw DataError("normalized_cycle_amplitudes: cycle " + std::to_string(c + 1) +
                            " has fewer than 2 readings");
        double imin = readings[lo].intensity;
        double imax = readings[lo].intensity;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            imin = std::min(imin, readings[i].intensity);
            imax = std::max(imax, readings[i].intensity);
        }
        if (imax == 0.0)
            throw DegenerateError("degenerate-cycle: Imax is zero in cycle " +
                                  std::to_string(c + 1));
        amplitudes.push_back((imax - imin) / imax);
    }
    return amplitudes;
}

std::vector<std::size_t> cycle_starts_from_times(std::span<const double> t_s,
                                                 double actuation_hz) {
    if (!(actuation_hz > 0.0))
        throw ConfigError("cycle_starts_from_times: actuation frequency must be positive");
    std::vector<std::size_t> starts;
    long long prev = -1;
    for (std::size_t i = 0; i < t_s.size(); ++i) {
        const long long c = static_cast<long long>(std::floor(t_s[i] * actuation_hz + 1e-9));
        if (c != prev) {
            starts.push_back(i);
            prev = c;
        }
    }
    return starts;
}

JointCalibration calibrate(std::span<const LossSample> samples, double i0_nw_cm2,
                           ExecMode mode) {
    const FitLine fit = fit_line(samples, mode);
    JointCalibration cal;
    cal.beta0_db = fit.beta0_db;
    cal.beta1_db_per_deg = fit.beta1_db_per_deg;
    cal.i0_nw_cm2 = i0_nw_cm2;
    cal.n_samples = samples.size();
    cal.sensitivity_db_per_deg = fit.beta1_db_per_deg;
    cal.linearity_fsr_pct = linearity_fsr(samples, fit.beta0_db, fit.beta1_db_per_deg, mode);
    cal.rms_error_deg = rms_error_deg(samples, fit.beta0_db, fit.beta1_db_per_deg, mode);
    cal.hysteresis_fsr_pct = hysteresis_fsr(samples, mode);
    const k::MinMax range =
        k::min_max(samples.size(), [&](std::size_t i) { return samples[i].loss_db; }, mode);
    cal.fsr_db = range.max - range.min;
    cal.peak_abs_loss_db =
        k::max_abs(samples.size(), [&](std::size_t i) { return samples[i].loss_db; }, mode);
    return cal;
}

std::pair<std::vector<LossSample>, double> loss_samples(const TrialLog& log, SensorId sensor,
                                                        std::optional<double> i0_override) {
    if (log.empty()) throw DataError("loss_samples: empty trial log");
    const std::size_t j = static_cast<std::size_t>(sensor);
    const double i0 = i0_override.value_or(log.records.front().intensity[j]);
    std::vector<LossSample> out;
    out.reserve(log.size());
    for (const TrialRecord& rec : log.records)
        out.push_back({rec.theta_deg[j], power_loss(rec.intensity[j], i0), rec.phase});
    return {std::move(out), i0};
}

std::pair<std::vector<LossSample>, std::array<double, 3>> summed_loss_samples(
    const TrialLog& log, SensorId target_joint,
    std::optional<std::array<double, 3>> i0_override) {
    if (log.empty()) throw DataError("summed_loss_samples: empty trial log");
    std::array<double, 3> i0{};
    for (std::size_t j = 0; j < 3; ++j)
        i0[j] = i0_override ? (*i0_override)[j] : log.records.front().intensity[j];
    const std::size_t target = static_cast<std::size_t>(target_joint);
    std::vector<LossSample> out;
    out.reserve(log.size());
    for (const TrialRecord& rec : log.records) {
        double summed = 0.0;
        for (std::size_t j = 0; j < 3; ++j) summed += power_loss(rec.intensity[j], i0[j]);
        out.push_back({rec.theta_deg[target], summed, rec.phase});
    }
    return {std::move(out), i0};
}

}  // namespace fingersense::signal
