#pragma once

// Deterministic synthetic generator of trial logs for an underactuated
// 4-link finger with three optical bending sensors. One tendon pulley
// drives all joints through coupling weights; each joint's sensor responds
// linearly in dB with configurable noise, hysteresis, and disturbance.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fingersense/rng.hpp"
#include "fingersense/trial_log.hpp"

namespace fingersense::sim {

/// Ground-truth response of one joint sensor: loss(theta) =
/// beta0 + beta1*theta (+ hysteresis offset when unloading) + N(0, sigma^2),
/// emitted as intensity i0 * 10^(-loss/10).
struct SensorSpec {
    double beta0_db = 0.0;
    double beta1_db_per_deg = 0.06;
    double noise_sigma_db = 0.0;
    double hysteresis_offset_db = 0.0;  // added on unloading
    double i0_nw_cm2 = 25000.0;
};

enum class ScenarioKind { QuasiStaticSweep, StressCycles, WeightedSweep, ContactEvent };

struct Disturbance {
    double gain = 1.0;  // multiplicative on intensity, >= 1
    std::array<double, 3> angle_shift_deg{0.0, 0.0, 0.0};
};

struct ContactSpec {
    double t_contact_s = 0.7;
    double t_release_s = 12.2;
    std::array<bool, 3> frozen_joints{false, true, true};  // MCP, PIP, DIP
};

struct SimScenario {
    ScenarioKind kind = ScenarioKind::QuasiStaticSweep;
    std::uint64_t seed = 0;

    // sweep geometry
    double pulley_range_deg = 263.6;
    double pulley_step_deg = 0.44;
    double sample_rate_hz = 8.0;
    int repeats = 5;
    // Records emitted per pulley position: the settling tick plus the
    // measurement tick of the stepped protocol.
    int records_per_step = 2;

    // actuation-to-joint mapping
    std::array<double, 3> coupling_weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::array<double, 3> joint_limits_deg{90.0, 90.0, 90.0};
    // Pulley-to-bend ratio kappa; 0 = auto (full sweep drives every joint
    // to its limit: max_j limit_j / (w_j * range)).
    double pulley_to_joint_ratio = 0.0;

    // stress cycling
    int cycles = 450;
    double actuation_hz = 1.46;
    // Fraction of beta1 faded linearly over the whole test; models loss of
    // modulation depth from fiber fatigue. A uniform multiplicative
    // intensity decay cancels out of (Imax-Imin)/Imax.
    double sensitivity_decay = 0.0;

    // contact trial profile (stepped ramp)
    double contact_step_deg = 9.0;
    double contact_pause_s = 0.25;
    double contact_tail_s = 2.0;

    std::optional<Disturbance> disturbance;
    std::optional<ContactSpec> contact;
};

/// Frozen-joint bookkeeping during a contact event: held angles plus the
/// pulley position the hold started from.
struct ContactHold {
    std::array<bool, 3> frozen{false, false, false};
    std::array<double, 3> held_deg{0.0, 0.0, 0.0};
    double pulley_deg_at_freeze = 0.0;
};

/// Underactuated pulley-to-joint mapping: theta_j = min(w_j*pulley*kappa,
/// limit_j). While a hold is active, frozen joints keep their held angle
/// and their weight share is redistributed proportionally to the unfrozen
/// joints, which advance incrementally from the hold point.
std::array<double, 3> joint_angles_from_pulley(double pulley_deg,
                                               const std::array<double, 3>& coupling_weights,
                                               const std::array<double, 3>& joint_limits_deg,
                                               double kappa,
                                               const ContactHold* hold = nullptr);

/// One sensor reading for a joint angle. `beta1_scale` rescales the
/// sensitivity (stress degradation hook); `gain` multiplies the emitted
/// intensity (external-force disturbance).
double sense(double theta_deg, const SensorSpec& spec, Phase phase, Rng& rng, double gain = 1.0,
             double beta1_scale = 1.0);

/// Deterministic scenario execution: same (scenario, specs) gives a
/// byte-identical log.
TrialLog run_scenario(const SimScenario& scenario, const std::array<SensorSpec, 3>& specs);

/// Ascending pulley grid of one sweep phase: multiples of the step, plus
/// the exact range endpoint when the grid does not land on it.
std::vector<double> sweep_grid(double range_deg, double step_deg);

/// Record count contract for a quasi-static sweep: per repeat, loading
/// visits the whole grid and unloading retraces it without re-measuring
/// the turnaround point, with records_per_step records per position.
std::size_t expected_sweep_records(const SimScenario& scenario);

double resolve_kappa(const SimScenario& scenario);

}  // namespace fingersense::sim
