#pragma once

// Planar forward kinematics of the finger, sensor-model inversion, and
// multi- vs single-sensor pose estimation.

#include <array>
#include <span>
#include <vector>

#include "fingersense/kernels.hpp"
#include "fingersense/signal.hpp"

namespace fingersense::kin {

using kernels::ExecMode;
using signal::JointCalibration;

/// Planar chain: the first link is the fixed metacarpal segment along the
/// x-axis, followed by one revolute joint before each remaining link.
struct ChainConfig {
    std::vector<double> link_lengths_mm{28.0, 28.0, 28.0, 28.0};

    std::size_t joint_count() const { return link_lengths_mm.size() - 1; }
};

struct Point2 {
    double x_mm = 0.0;
    double y_mm = 0.0;
};

struct Pose {
    std::array<double, 3> joint_angles_deg{0.0, 0.0, 0.0};  // positive = flexion
    Point2 fingertip;
};

/// Fingertip position: base link along +x, each joint angle accumulates.
Point2 forward_kinematics(const ChainConfig& chain, std::span<const double> joint_angles_deg);

/// Invert the calibration line: theta = (loss - beta0) / beta1. With
/// `clamp` off, negative estimates pass through (out-of-range losses map
/// to out-of-range angles); with it on, the estimate is clipped to
/// [0, theta_max_deg].
double angle_from_loss(double loss_db, const JointCalibration& cal, bool clamp = false,
                       double theta_max_deg = 90.0);

/// Per-joint inversion of the three calibration lines, then forward
/// kinematics.
Pose estimate_pose_multi(const std::array<double, 3>& losses_db,
                         const std::array<JointCalibration, 3>& cals, const ChainConfig& chain,
                         bool clamp = false, double theta_max_deg = 90.0);

/// All three joints predicted from a single loss value through per-joint
/// models trained on single-sensor data.
Pose estimate_pose_single(double loss_db, const std::array<JointCalibration, 3>& cals,
                          const ChainConfig& chain, bool clamp = false,
                          double theta_max_deg = 90.0);

/// Euclidean distance between fingertip positions.
double fingertip_error(const Pose& estimate, const Pose& truth);

/// Batch pose estimation over per-record losses (one array of three losses
/// per record).
std::vector<Pose> estimate_poses_multi(std::span<const std::array<double, 3>> losses,
                                       const std::array<JointCalibration, 3>& cals,
                                       const ChainConfig& chain, bool clamp = false,
                                       double theta_max_deg = 90.0,
                                       ExecMode mode = ExecMode::Auto);

std::vector<Pose> estimate_poses_single(std::span<const double> summed_losses,
                                        const std::array<JointCalibration, 3>& cals,
                                        const ChainConfig& chain, bool clamp = false,
                                        double theta_max_deg = 90.0,
                                        ExecMode mode = ExecMode::Auto);

/// Pose for known joint angles (ground truth rows of a trial log).
Pose pose_from_angles(const std::array<double, 3>& joint_angles_deg, const ChainConfig& chain);

/// Per-record fingertip errors and their mean.
std::vector<double> fingertip_errors(std::span<const Pose> estimates,
                                     std::span<const Pose> truths,
                                     ExecMode mode = ExecMode::Auto);
double mean_fingertip_error(std::span<const Pose> estimates, std::span<const Pose> truths,
                            ExecMode mode = ExecMode::Auto);

}  // namespace fingersense::kin
