#include "fingersense/stats.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "fingersense/errors.hpp"

namespace fingersense::stats {

namespace k = fingersense::kernels;

namespace {

struct GroupFit {
    double mean_theta = 0.0;
    double mean_loss = 0.0;
    double s_tt = 0.0;
    double s_ty = 0.0;
    double beta1 = 0.0;
    double beta0 = 0.0;
    std::size_t n = 0;
};

GroupFit fit_group(std::span<const LossSample> g, std::size_t index_1based, ExecMode mode) {
    GroupFit fit;
    fit.n = g.size();
    if (fit.n < 3)
        throw DataError("insufficient-data: ancova group " + std::to_string(index_1based) +
                        " has fewer than 3 samples");
    const k::MinMax trange = k::min_max(g.size(), [&](std::size_t i) { return g[i].theta_deg; });
    if (!(trange.max - trange.min >
          1e-12 * std::max({std::fabs(trange.max), std::fabs(trange.min), 1.0})))
        throw DegenerateError("singular-design: ancova group " + std::to_string(index_1based) +
                              " has no theta variation");
    const k::SumPair totals = k::sum_pair(
        g.size(), [&](std::size_t i) { return k::SumPair{g[i].theta_deg, g[i].loss_db}; }, mode);
    fit.mean_theta = totals.a / static_cast<double>(fit.n);
    fit.mean_loss = totals.b / static_cast<double>(fit.n);
    const k::SumPair moments = k::sum_pair(
        g.size(),
        [&](std::size_t i) {
            const double dt = g[i].theta_deg - fit.mean_theta;
            const double dy = g[i].loss_db - fit.mean_loss;
            return k::SumPair{dt * dt, dt * dy};
        },
        mode);
    fit.s_tt = moments.a;
    fit.s_ty = moments.b;
    fit.beta1 = fit.s_ty / fit.s_tt;
    fit.beta0 = fit.mean_loss - fit.beta1 * fit.mean_theta;
    return fit;
}

double sse_against_line(std::span<const LossSample> g, double beta0, double beta1,
                        ExecMode mode) {
    return k::sum(
        g.size(),
        [&](std::size_t i) {
            const double r = g[i].loss_db - (beta0 + beta1 * g[i].theta_deg);
            return r * r;
        },
        mode);
}

}  // namespace

AncovaResult ancova_f(std::span<const std::span<const LossSample>> groups, AncovaModel model,
                      ExecMode mode) {
    const std::size_t g = groups.size();
    if (g < 2) throw DataError("insufficient-data: ancova needs at least 2 groups");

    std::vector<GroupFit> fits;
    fits.reserve(g);
    std::size_t n_total = 0;
    double sum_theta = 0.0, sum_loss = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        fits.push_back(fit_group(groups[i], i + 1, mode));
        n_total += fits[i].n;
        sum_theta += fits[i].mean_theta * static_cast<double>(fits[i].n);
        sum_loss += fits[i].mean_loss * static_cast<double>(fits[i].n);
    }

    // Pooled single line over all groups.
    const double pooled_mean_theta = sum_theta / static_cast<double>(n_total);
    const double pooled_mean_loss = sum_loss / static_cast<double>(n_total);
    double pooled_s_tt = 0.0, pooled_s_ty = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        const k::SumPair m = k::sum_pair(
            groups[i].size(),
            [&, i](std::size_t j) {
                const double dt = groups[i][j].theta_deg - pooled_mean_theta;
                const double dy = groups[i][j].loss_db - pooled_mean_loss;
                return k::SumPair{dt * dt, dt * dy};
            },
            mode);
        pooled_s_tt += m.a;
        pooled_s_ty += m.b;
    }
    if (!(pooled_s_tt > 0.0))
        throw DegenerateError("singular-design: pooled ancova design has no theta variation");
    const double pooled_beta1 = pooled_s_ty / pooled_s_tt;
    const double pooled_beta0 = pooled_mean_loss - pooled_beta1 * pooled_mean_theta;
    double sse_pooled = 0.0;
    for (std::size_t i = 0; i < g; ++i)
        sse_pooled += sse_against_line(groups[i], pooled_beta0, pooled_beta1, mode);

    // Alternative model: separate lines, or per-group intercepts with a
    // common slope.
    double sse_model = 0.0;
    long long df_error = 0;
    if (model == AncovaModel::SeparateLines) {
        for (std::size_t i = 0; i < g; ++i)
            sse_model += sse_against_line(groups[i], fits[i].beta0, fits[i].beta1, mode);
        df_error = static_cast<long long>(n_total) - 2 * static_cast<long long>(g);
    } else {
        double s_tt_within = 0.0, s_ty_within = 0.0;
        for (const GroupFit& f : fits) {
            s_tt_within += f.s_tt;
            s_ty_within += f.s_ty;
        }
        if (!(s_tt_within > 0.0))
            throw DegenerateError("singular-design: no within-group theta variation");
        const double common_beta1 = s_ty_within / s_tt_within;
        for (std::size_t i = 0; i < g; ++i) {
            const double b0 = fits[i].mean_loss - common_beta1 * fits[i].mean_theta;
            sse_model += sse_against_line(groups[i], b0, common_beta1, mode);
        }
        df_error = static_cast<long long>(n_total) - static_cast<long long>(g) - 1;
    }

    AncovaResult result;
    result.df_between = static_cast<long long>(g) - 1;
    result.df_error = df_error;
    if (df_error < 1) throw DataError("insufficient-data: ancova error degrees of freedom < 1");

    const double extra = sse_pooled - sse_model;
    if (extra <= 0.0) {
        result.f_stat = 0.0;
        result.p_value = 1.0;
        return result;
    }
    if (sse_model == 0.0) {
        result.f_stat = std::numeric_limits<double>::infinity();
        result.p_value = 0.0;
        return result;
    }
    result.f_stat = (extra / static_cast<double>(result.df_between)) /
                    (sse_model / static_cast<double>(df_error));
    result.p_value = f_sf(result.f_stat, static_cast<double>(result.df_between),
                          static_cast<double>(df_error));
    return result;
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr double kFpMin = 1e-300;
    constexpr double kEps = 3e-16;
    constexpr int kMaxIter = 500000;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) return h;
    }
    throw DegenerateError("incomplete beta continued fraction failed to converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DataError("regularized_incomplete_beta: a and b must be positive and finite");
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
        throw DataError("regularized_incomplete_beta: x must be inside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_cdf(double x, double df1, double df2) {
    if (!std::isfinite(x) || !std::isfinite(df1) || !std::isfinite(df2))
        throw DataError("f_cdf: non-finite input");
    if (x < 0.0) throw DataError("f_cdf: x must be non-negative");
    if (!(df1 >= 1.0) || !(df2 >= 1.0)) throw DataError("f_cdf: degrees of freedom must be >= 1");
    if (x == 0.0) return 0.0;
    const double xx = df1 * x / (df1 * x + df2);
    return regularized_incomplete_beta(df1 / 2.0, df2 / 2.0, xx);
}

double f_sf(double x, double df1, double df2) {
    if (!std::isfinite(x) || !std::isfinite(df1) || !std::isfinite(df2))
        throw DataError("f_sf: non-finite input");
    if (x < 0.0) throw DataError("f_sf: x must be non-negative");
    if (!(df1 >= 1.0) || !(df2 >= 1.0)) throw DataError("f_sf: degrees of freedom must be >= 1");
    if (x == 0.0) return 1.0;
    const double xx = df2 / (df2 + df1 * x);
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, xx);
}

std::string format_p_value(double p) {
    if (p < 1e-300) return "<1e-300";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", p);
    return buf;
}

}  // namespace fingersense::stats
