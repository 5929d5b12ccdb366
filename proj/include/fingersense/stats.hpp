#pragma once

// Reproducibility testing across sensors: extra-sum-of-squares ANCOVA over
// per-sensor calibration lines, and the F-distribution CDF it needs.

#include <cstddef>
#include <span>
#include <string>

#include "fingersense/kernels.hpp"
#include "fingersense/signal.hpp"

namespace fingersense::stats {

using kernels::ExecMode;
using signal::LossSample;

struct AncovaResult {
    double f_stat = 0.0;
    long long df_between = 0;
    long long df_error = 0;
    double p_value = 1.0;
};

/// Which alternative model the pooled single line is tested against.
/// SeparateLines fits an intercept and a slope per group (2g parameters,
/// df_error = N - 2g), which is the variant matching the reported
/// F(g-1, N-2g) dimensions. CommonSlope is the classical ANCOVA with
/// per-group intercepts and one shared slope (df_error = N - g - 1).
enum class AncovaModel { SeparateLines, CommonSlope };

/// Extra-sum-of-squares F test of whether per-sensor response lines differ:
/// F = [(SSE_pooled - SSE_model)/df_between] / [SSE_model/df_error] with
/// df_between = groups - 1.
AncovaResult ancova_f(std::span<const std::span<const LossSample>> groups,
                      AncovaModel model = AncovaModel::SeparateLines,
                      ExecMode mode = ExecMode::Auto);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// F-distribution CDF: I_{d1 x/(d1 x + d2)}(d1/2, d2/2).
double f_cdf(double x, double df1, double df2);

/// Upper tail computed directly from the complementary incomplete beta, so
/// tiny p-values do not lose precision through 1 - CDF.
double f_sf(double x, double df1, double df2);

/// p-values below 1e-300 render as "<1e-300" rather than a misleading 0.
std::string format_p_value(double p);

}  // namespace fingersense::stats
