#pragma once

// PCA training on free-motion sensor data, residual-subspace Q-statistic,
// the analytic detection threshold, and the streaming contact detector.
//
// The model is a 3-dimensional PCA of the per-record loss vectors. Free
// motion of the underactuated finger confines observations near a line in
// loss space, so the first principal component captures nominal behaviour
// and contact shows up as energy in the residual subspace:
//
//   Q = (z - mean)^T P_res P_res^T (z - mean)
//
// with the threshold J_th computed from the residual eigenvalue moments
// (Box approximation) at confidence alpha.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fingersense/kernels.hpp"
#include "fingersense/mat3.hpp"

namespace fingersense::anomaly {

using kernels::ExecMode;

struct PcaModel {
    Vec3 mean;
    Mat3 loadings;    // orthonormal columns, descending eigenvalue order
    Vec3 eigenvalues; // non-increasing, >= 0
};

struct PcaDetector {
    Vec3 mean;
    Mat3 loadings;
    Vec3 eigenvalues;
    int beta = 1;          // principal-subspace dimension, 1 <= beta < 3
    double alpha = 0.90;   // detection confidence
    double c_alpha = 1.282;
    double j_th = 0.0;
};

/// Sample mean and covariance (divisor N-1) eigendecomposition of N >= 4
/// loss vectors. Eigenvector signs are fixed so each column's
/// largest-magnitude entry is positive.
PcaModel fit_pca(std::span<const Vec3> observations, ExecMode mode = ExecMode::Auto);

/// Smallest beta whose leading eigenvalues explain at least `cutoff` of the
/// total variance, capped at m-1 = 2.
int select_beta(const Vec3& eigenvalues, double cutoff = 0.9);

/// Normal deviate for the upper 1-alpha percentile. The values used in the
/// source experiments (alpha = 0.90, 0.95, 0.99 -> 1.282, 1.645, 2.326)
/// are tabulated; any other alpha goes through an Acklam-style rational
/// approximation of the inverse normal CDF (|error| < 1.15e-9).
double normal_deviate(double alpha);

/// Residual Q-statistic of one observation (training-mean centered).
double q_statistic(const Vec3& z, const PcaDetector& detector);

/// Q for a batch of observations.
std::vector<double> q_statistic_batch(std::span<const Vec3> z, const PcaDetector& detector,
                                      ExecMode mode = ExecMode::Auto);

std::size_t count_exceedances(std::span<const double> q, double j_th,
                              ExecMode mode = ExecMode::Auto);

/// Analytic detection threshold from the residual eigenvalue moments
/// theta_i = sum_{j>beta} lambda_j^i and h0 = 1 - 2*theta1*theta3/(3*theta2^2).
/// Requires a non-degenerate residual spectrum (max residual eigenvalue
/// above 1e-12 * lambda_1): noiseless training data cannot define a
/// false-alarm-calibrated threshold.
double threshold_jth(const Vec3& eigenvalues, int beta, double c_alpha);

/// fit_pca + select_beta + threshold_jth with the tabulated deviate.
PcaDetector train_detector(std::span<const Vec3> observations, double cutoff = 0.9,
                           double alpha = 0.90, ExecMode mode = ExecMode::Auto);

enum class ContactState { Free, Contact };
enum class Transition { None, ContactOnset, ContactRelease };

struct DetectionEvent {
    double t_s = 0.0;
    double q = 0.0;
    double threshold = 0.0;
    ContactState state = ContactState::Free;
    Transition transition = Transition::None;
};

/// Streaming detector: one mutable state per stream (debounce counter and
/// current contact state), exactly one writer. The state flips after
/// `debounce` consecutive readings on the other side of the threshold.
class StreamDetector {
public:
    explicit StreamDetector(const PcaDetector& detector, int debounce = 1);

    /// Process one reading; timestamps must be strictly increasing.
    DetectionEvent update(double t_s, const Vec3& losses);

    ContactState state() const { return state_; }

private:
    PcaDetector detector_;
    int debounce_;
    ContactState state_ = ContactState::Free;
    int run_length_ = 0;
    double last_t_ = 0.0;
    bool has_last_ = false;
};

/// Batch wrapper over StreamDetector: one event per reading.
std::vector<DetectionEvent> detect_stream(std::span<const double> t_s,
                                          std::span<const Vec3> losses,
                                          const PcaDetector& detector, int debounce = 1);

/// Plain-text key-value model file with 17-significant-digit encoding, so
/// a saved detector round-trips exactly.
void save_detector(const std::filesystem::path& path, const PcaDetector& detector,
                   const std::string& header_comment = {});
PcaDetector load_detector(const std::filesystem::path& path);

}  // namespace fingersense::anomaly
