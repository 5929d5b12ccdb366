#include "fingersense/kinematics.hpp"

#include <cmath>
#include <string>

#include "fingersense/errors.hpp"

namespace fingersense::kin {

namespace k = fingersense::kernels;

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void validate_chain(const ChainConfig& chain) {
    if (chain.link_lengths_mm.size() < 2)
        throw ConfigError("chain needs at least one joint (two links)");
    for (double len : chain.link_lengths_mm)
        if (!(len > 0.0)) throw ConfigError("chain link lengths must be positive");
}

}  // namespace

Point2 forward_kinematics(const ChainConfig& chain, std::span<const double> joint_angles_deg) {
    validate_chain(chain);
    if (joint_angles_deg.size() != chain.joint_count())
        throw DataError("dimension: expected " + std::to_string(chain.joint_count()) +
                        " joint angles, got " + std::to_string(joint_angles_deg.size()));
    double phi = 0.0;
    Point2 tip{chain.link_lengths_mm[0], 0.0};
    for (std::size_t j = 0; j < joint_angles_deg.size(); ++j) {
        phi += joint_angles_deg[j] * kDegToRad;
        tip.x_mm += chain.link_lengths_mm[j + 1] * std::cos(phi);
        tip.y_mm += chain.link_lengths_mm[j + 1] * std::sin(phi);
    }
    return tip;
}

double angle_from_loss(double loss_db, const JointCalibration& cal, bool clamp,
                       double theta_max_deg) {
    if (cal.beta1_db_per_deg == 0.0)
        throw DegenerateError("zero-sensitivity: cannot invert a flat calibration line");
    double theta = (loss_db - cal.beta0_db) / cal.beta1_db_per_deg;
    if (clamp) theta = std::clamp(theta, 0.0, theta_max_deg);
    return theta;
}

Pose estimate_pose_multi(const std::array<double, 3>& losses_db,
                         const std::array<JointCalibration, 3>& cals, const ChainConfig& chain,
                         bool clamp, double theta_max_deg) {
    Pose pose;
    for (std::size_t j = 0; j < 3; ++j)
        pose.joint_angles_deg[j] = angle_from_loss(losses_db[j], cals[j], clamp, theta_max_deg);
    pose.fingertip = forward_kinematics(chain, pose.joint_angles_deg);
    return pose;
}

Pose estimate_pose_single(double loss_db, const std::array<JointCalibration, 3>& cals,
                          const ChainConfig& chain, bool clamp, double theta_max_deg) {
    Pose pose;
    for (std::size_t j = 0; j < 3; ++j)
        pose.joint_angles_deg[j] = angle_from_loss(loss_db, cals[j], clamp, theta_max_deg);
    pose.fingertip = forward_kinematics(chain, pose.joint_angles_deg);
    return pose;
}

double fingertip_error(const Pose& estimate, const Pose& truth) {
    return std::hypot(estimate.fingertip.x_mm - truth.fingertip.x_mm,
                      estimate.fingertip.y_mm - truth.fingertip.y_mm);
}

Pose pose_from_angles(const std::array<double, 3>& joint_angles_deg, const ChainConfig& chain) {
    Pose pose;
    pose.joint_angles_deg = joint_angles_deg;
    pose.fingertip = forward_kinematics(chain, joint_angles_deg);
    return pose;
}

std::vector<Pose> estimate_poses_multi(std::span<const std::array<double, 3>> losses,
                                       const std::array<JointCalibration, 3>& cals,
                                       const ChainConfig& chain, bool clamp,
                                       double theta_max_deg, ExecMode mode) {
    for (const auto& cal : cals)
        if (cal.beta1_db_per_deg == 0.0)
            throw DegenerateError("zero-sensitivity: cannot invert a flat calibration line");
    std::vector<Pose> out(losses.size());
    k::parallel_for(losses.size(), mode, [&](std::size_t i) {
        out[i] = estimate_pose_multi(losses[i], cals, chain, clamp, theta_max_deg);
    });
    return out;
}

std::vector<Pose> estimate_poses_single(std::span<const double> summed_losses,
                                        const std::array<JointCalibration, 3>& cals,
                                        const ChainConfig& chain, bool clamp,
                                        double theta_max_deg, ExecMode mode) {
    for (const auto& cal : cals)
        if (cal.beta1_db_per_deg == 0.0)
            throw DegenerateError("zero-sensitivity: cannot invert a flat calibration line");
    std::vector<Pose> out(summed_losses.size());
    k::parallel_for(summed_losses.size(), mode, [&](std::size_t i) {
        out[i] = estimate_pose_single(summed_losses[i], cals, chain, clamp, theta_max_deg);
    });
    return out;
}

std::vector<double> fingertip_errors(std::span<const Pose> estimates,
                                     std::span<const Pose> truths, ExecMode mode) {
    if (estimates.size() != truths.size())
        throw DataError("dimension: estimate and truth series differ in length");
    std::vector<double> out(estimates.size());
    k::parallel_for(estimates.size(), mode,
                    [&](std::size_t i) { out[i] = fingertip_error(estimates[i], truths[i]); });
    return out;
}

double mean_fingertip_error(std::span<const Pose> estimates, std::span<const Pose> truths,
                            ExecMode mode) {
    if (estimates.empty()) throw DataError("mean_fingertip_error: empty series");
    if (estimates.size() != truths.size())
        throw DataError("dimension: estimate and truth series differ in length");
    const double total = k::sum(
        estimates.size(),
        [&](std::size_t i) { return fingertip_error(estimates[i], truths[i]); }, mode);
    return total / static_cast<double>(estimates.size());
}

}  // namespace fingersense::kin
