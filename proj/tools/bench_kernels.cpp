// Serial-vs-OpenMP comparison of the blocked kernels on representative
// batch workloads: regression moments, covariance accumulation, batch
// Q-statistics, and batch pose estimation.

#include <benchmark/benchmark.h>

#include <vector>

#include "fingersense/anomaly.hpp"
#include "fingersense/kernels.hpp"
#include "fingersense/kinematics.hpp"
#include "fingersense/rng.hpp"
#include "fingersense/signal.hpp"

namespace k = fingersense::kernels;
using fingersense::Rng;
using fingersense::Vec3;
using k::ExecMode;

namespace {

std::vector<fingersense::signal::LossSample> make_samples(std::size_t n) {
    Rng rng(42);
    std::vector<fingersense::signal::LossSample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 90.0 * rng.uniform01();
        samples[i] = {theta, 0.3 + 0.06 * theta + 0.05 * rng.normal(),
                      fingersense::Phase::Loading};
    }
    return samples;
}

std::vector<Vec3> make_cloud(std::size_t n) {
    Rng rng(7);
    std::vector<Vec3> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = 90.0 * rng.uniform01();
        z[i] = Vec3{{0.055 * s + 0.02 * rng.normal(), 0.063 * s + 0.02 * rng.normal(),
                     0.071 * s + 0.02 * rng.normal()}};
    }
    return z;
}

void bench_fit_line(benchmark::State& state, ExecMode mode) {
    const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto fit = fingersense::signal::fit_line(samples, mode);
        benchmark::DoNotOptimize(fit);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bench_covariance(benchmark::State& state, ExecMode mode) {
    const auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto model = fingersense::anomaly::fit_pca(cloud, mode);
        benchmark::DoNotOptimize(model);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bench_batch_q(benchmark::State& state, ExecMode mode) {
    const auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)));
    const auto detector = fingersense::anomaly::train_detector(cloud);
    for (auto _ : state) {
        const auto q = fingersense::anomaly::q_statistic_batch(cloud, detector, mode);
        benchmark::DoNotOptimize(q);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bench_batch_pose(benchmark::State& state, ExecMode mode) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    std::vector<std::array<double, 3>> losses(n);
    for (auto& row : losses)
        for (double& v : row) v = 5.0 * rng.uniform01();
    fingersense::kin::ChainConfig chain;
    std::array<fingersense::signal::JointCalibration, 3> cals;
    for (auto& cal : cals) {
        cal.beta0_db = 0.2;
        cal.beta1_db_per_deg = 0.06;
    }
    for (auto _ : state) {
        const auto poses = fingersense::kin::estimate_poses_multi(losses, cals, chain, false,
                                                                  90.0, mode);
        benchmark::DoNotOptimize(poses);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(bench_fit_line, serial, ExecMode::Serial)->Arg(1 << 20);
BENCHMARK_CAPTURE(bench_fit_line, parallel, ExecMode::Parallel)->Arg(1 << 20);
BENCHMARK_CAPTURE(bench_covariance, serial, ExecMode::Serial)->Arg(1 << 20);
BENCHMARK_CAPTURE(bench_covariance, parallel, ExecMode::Parallel)->Arg(1 << 20);
BENCHMARK_CAPTURE(bench_batch_q, serial, ExecMode::Serial)->Arg(1 << 20);
BENCHMARK_CAPTURE(bench_batch_q, parallel, ExecMode::Parallel)->Arg(1 << 20);
BENCHMARK_CAPTURE(bench_batch_pose, serial, ExecMode::Serial)->Arg(1 << 18);
BENCHMARK_CAPTURE(bench_batch_pose, parallel, ExecMode::Parallel)->Arg(1 << 18);

BENCHMARK_MAIN();
