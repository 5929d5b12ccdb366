#include "fingersense/simfinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fingersense/errors.hpp"

namespace fingersense::sim {

namespace {

void validate(const SimScenario& s, const std::array<SensorSpec, 3>& specs) {
    if (!(s.pulley_range_deg > 0.0))
        throw ConfigError("scenario-validation: pulley range must be positive");
    if (!(s.pulley_step_deg > 0.0))
        throw ConfigError("scenario-validation: pulley step must be positive");
    if (!(s.sample_rate_hz > 0.0))
        throw ConfigError("scenario-validation: sample rate must be positive");
    if (s.repeats < 1) throw ConfigError("scenario-validation: repeats must be >= 1");
    if (s.records_per_step < 1)
        throw ConfigError("scenario-validation: records_per_step must be >= 1");

    double weight_sum = 0.0;
    for (double w : s.coupling_weights) {
        if (w < 0.0) throw ConfigError("scenario-validation: coupling weights must be >= 0");
        weight_sum += w;
    }
    if (std::fabs(weight_sum - 1.0) > 1e-12)
        throw ConfigError("scenario-validation: coupling weights must sum to 1");
    for (double lim : s.joint_limits_deg)
        if (!(lim > 0.0)) throw ConfigError("scenario-validation: joint limits must be positive");

    for (const SensorSpec& spec : specs) {
        if (spec.noise_sigma_db < 0.0)
            throw ConfigError("scenario-validation: noise sigma must be >= 0");
        if (!(spec.i0_nw_cm2 > 0.0))
            throw ConfigError("scenario-validation: sensor i0 must be positive");
    }

    if (s.kind == ScenarioKind::StressCycles) {
        if (s.cycles < 1) throw ConfigError("scenario-validation: cycles must be >= 1");
        if (!(s.actuation_hz > 0.0))
            throw ConfigError("scenario-validation: actuation frequency must be positive");
        if (s.sensitivity_decay < 0.0 || s.sensitivity_decay >= 1.0)
            throw ConfigError("scenario-validation: sensitivity decay must be in [0, 1)");
    }
    if (s.kind == ScenarioKind::ContactEvent) {
        if (!s.contact) throw ConfigError("scenario-validation: contact scenario needs contact spec");
        if (!(s.contact->t_contact_s >= 0.0))
            throw ConfigError("scenario-validation: contact time must be >= 0");
        if (!(s.contact->t_release_s > s.contact->t_contact_s))
            throw ConfigError("scenario-validation: contact release precedes contact");
        if (!(s.contact_step_deg > 0.0) || !(s.contact_pause_s > 0.0))
            throw ConfigError("scenario-validation: contact ramp parameters must be positive");
    }
    if (s.disturbance && !(s.disturbance->gain >= 1.0))
        throw ConfigError("scenario-validation: disturbance gain must be >= 1");
}

}  // namespace

double resolve_kappa(const SimScenario& s) {
    if (s.pulley_to_joint_ratio > 0.0) return s.pulley_to_joint_ratio;
    double kappa = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        if (s.coupling_weights[j] <= 0.0) continue;
        kappa = std::max(kappa,
                         s.joint_limits_deg[j] / (s.coupling_weights[j] * s.pulley_range_deg));
    }
    if (!(kappa > 0.0))
        throw ConfigError("scenario-validation: cannot derive pulley-to-joint ratio");
    return kappa;
}

std::array<double, 3> joint_angles_from_pulley(double pulley_deg,
                                               const std::array<double, 3>& coupling_weights,
                                               const std::array<double, 3>& joint_limits_deg,
                                               double kappa, const ContactHold* hold) {
    std::array<double, 3> theta{};
    const bool holding =
        hold != nullptr && (hold->frozen[0] || hold->frozen[1] || hold->frozen[2]);
    if (!holding) {
        for (std::size_t j = 0; j < 3; ++j)
            theta[j] = std::clamp(coupling_weights[j] * pulley_deg * kappa, 0.0,
                                  joint_limits_deg[j]);
        return theta;
    }
    double frozen_weight = 0.0, free_weight = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
        (hold->frozen[j] ? frozen_weight : free_weight) += coupling_weights[j];
    const double delta_pulley = pulley_deg - hold->pulley_deg_at_freeze;
    for (std::size_t j = 0; j < 3; ++j) {
        if (hold->frozen[j]) {
            theta[j] = hold->held_deg[j];
            continue;
        }
        const double share =
            free_weight > 0.0 ? coupling_weights[j] * (1.0 + frozen_weight / free_weight) : 0.0;
        theta[j] = std::clamp(hold->held_deg[j] + share * delta_pulley * kappa, 0.0,
                              joint_limits_deg[j]);
    }
    return theta;
}

double sense(double theta_deg, const SensorSpec& spec, Phase phase, Rng& rng, double gain,
             double beta1_scale) {
    double loss = spec.beta0_db + spec.beta1_db_per_deg * beta1_scale * theta_deg;
    if (phase == Phase::Unloading) loss += spec.hysteresis_offset_db;
    if (spec.noise_sigma_db > 0.0) loss += rng.normal(0.0, spec.noise_sigma_db);
    return gain * spec.i0_nw_cm2 * std::pow(10.0, -loss / 10.0);
}

std::vector<double> sweep_grid(double range_deg, double step_deg) {
    const auto steps = static_cast<std::size_t>(std::floor(range_deg / step_deg + 1e-9));
    std::vector<double> grid;
    grid.reserve(steps + 2);
    for (std::size_t k = 0; k <= steps; ++k) grid.push_back(static_cast<double>(k) * step_deg);
    if (grid.back() < range_deg - 1e-9 * std::max(1.0, range_deg)) grid.push_back(range_deg);
    return grid;
}

std::size_t expected_sweep_records(const SimScenario& s) {
    const std::size_t grid = sweep_grid(s.pulley_range_deg, s.pulley_step_deg).size();
    return static_cast<std::size_t>(s.repeats) * (2 * grid - 1) *
           static_cast<std::size_t>(s.records_per_step);
}

TrialLog run_scenario(const SimScenario& scenario, const std::array<SensorSpec, 3>& specs) {
    validate(scenario, specs);
    const double kappa = resolve_kappa(scenario);
    const double gain = scenario.disturbance ? scenario.disturbance->gain : 1.0;
    const std::array<double, 3>* shift =
        scenario.disturbance ? &scenario.disturbance->angle_shift_deg : nullptr;

    Rng rng(scenario.seed);
    TrialLog log;
    std::size_t index = 0;

    const auto emit = [&](double pulley_deg, Phase phase, const ContactHold* hold,
                          double beta1_scale) {
        TrialRecord rec;
        rec.t_s = static_cast<double>(index) / scenario.sample_rate_hz;
        rec.pulley_deg = pulley_deg;
        rec.theta_deg = joint_angles_from_pulley(pulley_deg, scenario.coupling_weights,
                                                 scenario.joint_limits_deg, kappa, hold);
        if (shift)
            for (std::size_t j = 0; j < 3; ++j)
                rec.theta_deg[j] = std::clamp(rec.theta_deg[j] + (*shift)[j], 0.0,
                                              scenario.joint_limits_deg[j]);
        rec.phase = phase;
        for (std::size_t j = 0; j < 3; ++j)
            rec.intensity[j] = sense(rec.theta_deg[j], specs[j], phase, rng, gain, beta1_scale);
        log.records.push_back(rec);
        ++index;
    };

    switch (scenario.kind) {
        case ScenarioKind::QuasiStaticSweep:
        case ScenarioKind::WeightedSweep: {
            const std::vector<double> grid =
                sweep_grid(scenario.pulley_range_deg, scenario.pulley_step_deg);
            log.records.reserve(expected_sweep_records(scenario));
            for (int rep = 0; rep < scenario.repeats; ++rep) {
                for (double pulley : grid)
                    for (int r = 0; r < scenario.records_per_step; ++r)
                        emit(pulley, Phase::Loading, nullptr, 1.0);
                // Unloading retraces the grid without re-measuring the
                // turnaround point.
                for (std::size_t i = grid.size() - 1; i-- > 0;)
                    for (int r = 0; r < scenario.records_per_step; ++r)
                        emit(grid[i], Phase::Unloading, nullptr, 1.0);
            }
            break;
        }
        case ScenarioKind::StressCycles: {
            const double total_s =
                static_cast<double>(scenario.cycles) / scenario.actuation_hz;
            const auto n = static_cast<std::size_t>(
                std::ceil(total_s * scenario.sample_rate_hz - 1e-9));
            log.records.reserve(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) / scenario.sample_rate_hz;
                const double cycle_pos = t * scenario.actuation_hz;
                const double tau = cycle_pos - std::floor(cycle_pos);
                const double pulley = tau < 0.5
                                          ? scenario.pulley_range_deg * 2.0 * tau
                                          : scenario.pulley_range_deg * (2.0 - 2.0 * tau);
                const Phase phase = tau < 0.5 ? Phase::Loading : Phase::Unloading;
                const double beta1_scale = 1.0 - scenario.sensitivity_decay * (t / total_s);
                emit(pulley, phase, nullptr, beta1_scale);
            }
            break;
        }
        case ScenarioKind::ContactEvent: {
            const ContactSpec& cs = *scenario.contact;
            const double duration_s = cs.t_release_s + scenario.contact_tail_s;
            const auto n = static_cast<std::size_t>(
                std::ceil(duration_s * scenario.sample_rate_hz - 1e-9));
            log.records.reserve(n);
            ContactHold hold;
            bool holding = false;
            double prev_pulley = 0.0;
            std::array<double, 3> prev_theta{};
            for (std::size_t k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) / scenario.sample_rate_hz;
                const double pulley =
                    std::min(scenario.contact_step_deg *
                                 std::floor(t / scenario.contact_pause_s + 1e-9),
                             scenario.pulley_range_deg);
                const bool frozen_now = t >= cs.t_contact_s - 1e-12 &&
                                        t < cs.t_release_s - 1e-12;
                if (frozen_now && !holding) {
                    hold.frozen = cs.frozen_joints;
                    if (k == 0) {
                        hold.held_deg = joint_angles_from_pulley(
                            pulley, scenario.coupling_weights, scenario.joint_limits_deg,
                            kappa, nullptr);
                        hold.pulley_deg_at_freeze = pulley;
                    } else {
                        hold.held_deg = prev_theta;
                        hold.pulley_deg_at_freeze = prev_pulley;
                    }
                    holding = true;
                } else if (!frozen_now) {
                    holding = false;
                }
                emit(pulley, Phase::Loading, holding ? &hold : nullptr, 1.0);
                prev_pulley = pulley;
                prev_theta = log.records.back().theta_deg;
            }
            break;
        }
    }
    return log;
}

}  // namespace fingersense::sim
