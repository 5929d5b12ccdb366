#include "fingersense/anomaly.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fingersense/config.hpp"
#include "fingersense/errors.hpp"

namespace fingersense::anomaly {

namespace k = fingersense::kernels;

namespace {

struct Acc3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

struct Cov6 {
    double xx = 0.0, yy = 0.0, zz = 0.0, xy = 0.0, xz = 0.0, yz = 0.0;
};

bool finite(const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

PcaModel fit_pca(std::span<const Vec3> observations, ExecMode mode) {
    const std::size_t n = observations.size();
    if (n < 4) throw DataError("insufficient-data: PCA needs at least 4 observations");

    const Acc3 totals = k::blocked_reduce<Acc3>(
        n, Acc3{},
        [&](std::size_t lo, std::size_t hi) {
            Acc3 a;
            for (std::size_t i = lo; i < hi; ++i) {
                a.x += observations[i][0];
                a.y += observations[i][1];
                a.z += observations[i][2];
            }
            return a;
        },
        [](Acc3 a, Acc3 b) { return Acc3{a.x + b.x, a.y + b.y, a.z + b.z}; }, mode);
    const double inv_n = 1.0 / static_cast<double>(n);
    const Vec3 mean{{totals.x * inv_n, totals.y * inv_n, totals.z * inv_n}};
    if (!finite(mean)) throw DataError("fit_pca: non-finite observations");

    const Cov6 cov = k::blocked_reduce<Cov6>(
        n, Cov6{},
        [&](std::size_t lo, std::size_t hi) {
            Cov6 c;
            for (std::size_t i = lo; i < hi; ++i) {
                const double dx = observations[i][0] - mean[0];
                const double dy = observations[i][1] - mean[1];
                const double dz = observations[i][2] - mean[2];
                c.xx += dx * dx;
                c.yy += dy * dy;
                c.zz += dz * dz;
                c.xy += dx * dy;
                c.xz += dx * dz;
                c.yz += dy * dz;
            }
            return c;
        },
        [](Cov6 a, Cov6 b) {
            return Cov6{a.xx + b.xx, a.yy + b.yy, a.zz + b.zz,
                        a.xy + b.xy, a.xz + b.xz, a.yz + b.yz};
        },
        mode);

    const double inv_nm1 = 1.0 / static_cast<double>(n - 1);
    Mat3 sigma;
    sigma(0, 0) = cov.xx * inv_nm1;
    sigma(1, 1) = cov.yy * inv_nm1;
    sigma(2, 2) = cov.zz * inv_nm1;
    sigma(0, 1) = sigma(1, 0) = cov.xy * inv_nm1;
    sigma(0, 2) = sigma(2, 0) = cov.xz * inv_nm1;
    sigma(1, 2) = sigma(2, 1) = cov.yz * inv_nm1;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            if (!std::isfinite(sigma(r, c))) throw DataError("fit_pca: non-finite covariance");

    const SymEig3 eig = eig_sym3(sigma);
    PcaModel model;
    model.mean = mean;
    model.loadings = eig.vectors;
    // Covariance is PSD; clip the rounding dust so eigenvalues stay >= 0.
    for (std::size_t i = 0; i < 3; ++i)
        model.eigenvalues[i] = eig.values[i] < 0.0 ? 0.0 : eig.values[i];
    return model;
}

int select_beta(const Vec3& eigenvalues, double cutoff) {
    if (!(cutoff > 0.0 && cutoff < 1.0))
        throw ConfigError("select_beta: cutoff must be inside (0, 1)");
    const double total = eigenvalues[0] + eigenvalues[1] + eigenvalues[2];
    if (!(total > 0.0))
        throw DegenerateError("degenerate-variance: all eigenvalues are zero");
    double cum = 0.0;
    for (int b = 1; b <= 2; ++b) {
        cum += eigenvalues[static_cast<std::size_t>(b - 1)];
        if (cum / total >= cutoff) return b;
    }
    return 2;  // capped at m-1
}

double normal_deviate(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("normal_deviate: alpha must be inside (0, 1)");
    if (alpha == 0.90) return 1.282;
    if (alpha == 0.95) return 1.645;
    if (alpha == 0.99) return 2.326;

    // Acklam's rational approximation to the inverse normal CDF.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    const double p = alpha;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double q_statistic(const Vec3& z, const PcaDetector& detector) {
    const Vec3 centered = z - detector.mean;
    double q = 0.0;
    for (std::size_t j = static_cast<std::size_t>(detector.beta); j < 3; ++j) {
        const double proj = detector.loadings.col(j).dot(centered);
        q += proj * proj;
    }
    return q;
}

std::vector<double> q_statistic_batch(std::span<const Vec3> z, const PcaDetector& detector,
                                      ExecMode mode) {
    std::vector<double> out(z.size());
    k::parallel_for(z.size(), mode, [&](std::size_t i) { out[i] = q_statistic(z[i], detector); });
    return out;
}

std::size_t count_exceedances(std::span<const double> q, double j_th, ExecMode mode) {
    return k::count_if(q.size(), [&](std::size_t i) { return q[i] > j_th; }, mode);
}

double threshold_jth(const Vec3& eigenvalues, int beta, double c_alpha) {
    if (beta < 1 || beta > 2) throw ConfigError("threshold_jth: beta must be 1 or 2");
    const double lambda1 = eigenvalues[0];
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, max_res = 0.0;
    for (std::size_t j = static_cast<std::size_t>(beta); j < 3; ++j) {
        const double lam = eigenvalues[j];
        theta1 += lam;
        theta2 += lam * lam;
        theta3 += lam * lam * lam;
        max_res = std::max(max_res, lam);
    }
    if (!(lambda1 > 0.0) || max_res <= 1e-12 * lambda1)
        throw DegenerateError(
            "degenerate-residual: residual spectrum is numerically zero; a detection "
            "threshold cannot be calibrated on noiseless data");
    const double h0 = 1.0 - 2.0 * theta1 * theta3 / (3.0 * theta2 * theta2);
    if (h0 == 0.0) throw DegenerateError("degenerate-exponent: h0 is zero");
    const double base = c_alpha * std::sqrt(2.0 * theta2 * h0 * h0) / theta1 + 1.0 +
                        theta2 * h0 * (h0 - 1.0) / (theta1 * theta1);
    if (!(base > 0.0))
        throw DegenerateError("degenerate-exponent: threshold base is non-positive");
    const double j_th = theta1 * std::pow(base, 1.0 / h0);
    if (!std::isfinite(j_th) || !(j_th > 0.0))
        throw DegenerateError("degenerate-exponent: threshold evaluation failed");
    return j_th;
}

PcaDetector train_detector(std::span<const Vec3> observations, double cutoff, double alpha,
                           ExecMode mode) {
    const PcaModel model = fit_pca(observations, mode);
    PcaDetector det;
    det.mean = model.mean;
    det.loadings = model.loadings;
    det.eigenvalues = model.eigenvalues;
    det.beta = select_beta(model.eigenvalues, cutoff);
    det.alpha = alpha;
    det.c_alpha = normal_deviate(alpha);
    det.j_th = threshold_jth(model.eigenvalues, det.beta, det.c_alpha);
    return det;
}

StreamDetector::StreamDetector(const PcaDetector& detector, int debounce)
    : detector_(detector), debounce_(debounce) {
    if (debounce < 1) throw ConfigError("StreamDetector: debounce must be >= 1");
    if (!(detector.j_th > 0.0)) throw ConfigError("StreamDetector: detector has no threshold");
}

DetectionEvent StreamDetector::update(double t_s, const Vec3& losses) {
    if (has_last_ && !(t_s > last_t_))
        throw DataError("stream-order: timestamps must be strictly increasing");
    last_t_ = t_s;
    has_last_ = true;

    DetectionEvent ev;
    ev.t_s = t_s;
    ev.q = q_statistic(losses, detector_);
    ev.threshold = detector_.j_th;

    const bool exceed = ev.q > detector_.j_th;
    const bool toward_flip = (state_ == ContactState::Free) ? exceed : !exceed;
    if (toward_flip) {
        if (++run_length_ >= debounce_) {
            state_ = (state_ == ContactState::Free) ? ContactState::Contact
                                                    : ContactState::Free;
            ev.transition = (state_ == ContactState::Contact) ? Transition::ContactOnset
                                                              : Transition::ContactRelease;
            run_length_ = 0;
        }
    } else {
        run_length_ = 0;
    }
    ev.state = state_;
    return ev;
}

std::vector<DetectionEvent> detect_stream(std::span<const double> t_s,
                                          std::span<const Vec3> losses,
                                          const PcaDetector& detector, int debounce) {
    if (t_s.size() != losses.size())
        throw DataError("detect_stream: timestamp and observation counts differ");
    StreamDetector stream(detector, debounce);
    std::vector<DetectionEvent> events;
    events.reserve(t_s.size());
    for (std::size_t i = 0; i < t_s.size(); ++i) events.push_back(stream.update(t_s[i], losses[i]));
    return events;
}

void save_detector(const std::filesystem::path& path, const PcaDetector& detector,
                   const std::string& header_comment) {
    std::ostringstream out;
    out << "# fingersense detector model v1\n";
    if (!header_comment.empty()) out << header_comment;
    out << "m = 3\n";
    out << "mean = " << fmt17(detector.mean[0]) << "," << fmt17(detector.mean[1]) << ","
        << fmt17(detector.mean[2]) << "\n";
    out << "loadings = ";
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            out << fmt17(detector.loadings(r, c)) << ((r == 2 && c == 2) ? "\n" : ",");
    out << "eigenvalues = " << fmt17(detector.eigenvalues[0]) << ","
        << fmt17(detector.eigenvalues[1]) << "," << fmt17(detector.eigenvalues[2]) << "\n";
    out << "beta = " << detector.beta << "\n";
    out << "alpha = " << fmt17(detector.alpha) << "\n";
    out << "j_th = " << fmt17(detector.j_th) << "\n";

    std::ofstream file(path);
    if (!file) throw DataError("cannot write detector model: " + path.string());
    file << out.str();
}

PcaDetector load_detector(const std::filesystem::path& path) {
    KeyValueConfig cfg = KeyValueConfig::from_file(path);
    if (cfg.get_int("m") != 3) throw DataError("detector model: only m = 3 is supported");

    PcaDetector det;
    const std::vector<double> mean = cfg.get_double_list("mean");
    const std::vector<double> loadings = cfg.get_double_list("loadings");
    const std::vector<double> eigenvalues = cfg.get_double_list("eigenvalues");
    if (mean.size() != 3 || loadings.size() != 9 || eigenvalues.size() != 3)
        throw DataError("detector model: wrong field lengths");
    for (std::size_t i = 0; i < 3; ++i) det.mean[i] = mean[i];
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) det.loadings(r, c) = loadings[r * 3 + c];
    for (std::size_t i = 0; i < 3; ++i) det.eigenvalues[i] = eigenvalues[i];
    det.beta = static_cast<int>(cfg.get_int("beta"));
    det.alpha = cfg.get_double("alpha");
    det.j_th = cfg.get_double("j_th");
    cfg.reject_unknown();

    // Invariant checks on the loaded model.
    const Mat3 gram = det.loadings.transposed() * det.loadings;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            const double expected = (r == c) ? 1.0 : 0.0;
            if (std::fabs(gram(r, c) - expected) > 1e-9)
                throw DataError("detector model: loadings are not orthonormal");
        }
    if (det.eigenvalues[0] < det.eigenvalues[1] || det.eigenvalues[1] < det.eigenvalues[2] ||
        det.eigenvalues[2] < 0.0)
        throw DataError("detector model: eigenvalues must be non-increasing and non-negative");
    if (det.beta < 1 || det.beta > 2) throw DataError("detector model: beta must be 1 or 2");
    if (!(det.alpha > 0.0 && det.alpha < 1.0))
        throw DataError("detector model: alpha must be inside (0, 1)");
    if (!(det.j_th > 0.0)) throw DataError("detector model: threshold must be positive");
    det.c_alpha = normal_deviate(det.alpha);
    return det;
}

}  // namespace fingersense::anomaly
