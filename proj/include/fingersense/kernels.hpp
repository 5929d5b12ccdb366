#pragma once

// Blocked data-parallel primitives used by the batch paths (regression
// sums, covariance accumulation, residual extremes, batch projections).
//
// Every reduction decomposes its index range into fixed-size blocks,
// reduces each block sequentially, and folds the per-block partials in
// block order. The OpenMP path only distributes block evaluation across
// threads; the fold is the same, so serial and parallel execution produce
// bit-identical results and the output never depends on the thread count.
// The serial path is the reference implementation kept for tests and for
// the bench_kernels comparison target.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace fingersense::kernels {

enum class ExecMode { Auto, Serial, Parallel };

inline constexpr std::size_t kBlockSize = 8192;

inline bool use_parallel(ExecMode mode, std::size_t n) {
#ifdef _OPENMP
    if (mode == ExecMode::Parallel) return true;
    if (mode == ExecMode::Auto) return n >= 4 * kBlockSize;
#else
    (void)mode;
    (void)n;
#endif
    return false;
}

/// Reduce [0, n) in fixed blocks. `block(lo, hi)` returns the partial for
/// [lo, hi); partials are folded with `combine` in ascending block order
/// on both paths.
template <class Acc, class BlockFn, class CombineFn>
Acc blocked_reduce(std::size_t n, Acc init, BlockFn&& block, CombineFn&& combine,
                   ExecMode mode = ExecMode::Auto) {
    if (n == 0) return init;
    const std::size_t nblocks = (n + kBlockSize - 1) / kBlockSize;
    Acc acc = init;
    if (!use_parallel(mode, n) || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t lo = b * kBlockSize;
            const std::size_t hi = std::min(lo + kBlockSize, n);
            acc = combine(acc, block(lo, hi));
        }
        return acc;
    }
    std::vector<Acc> partial(nblocks, init);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
        const std::size_t hi = std::min(lo + kBlockSize, n);
        partial[static_cast<std::size_t>(b)] = block(lo, hi);
    }
    for (std::size_t b = 0; b < nblocks; ++b) acc = combine(acc, partial[b]);
    return acc;
}

/// Independent element-wise map over [0, n).
template <class Fn>
void parallel_for(std::size_t n, ExecMode mode, Fn&& fn) {
    if (use_parallel(mode, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            fn(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) fn(i);
    }
}

// ---- concrete reductions over projected values ----------------------------

template <class Proj>
double sum(std::size_t n, Proj&& proj, ExecMode mode = ExecMode::Auto) {
    return blocked_reduce<double>(
        n, 0.0,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += proj(i);
            return s;
        },
        [](double a, double b) { return a + b; }, mode);
}

struct SumPair {
    double a = 0.0;
    double b = 0.0;
};

/// Two sums in one pass; `proj(i)` returns the per-element contributions.
template <class Proj>
SumPair sum_pair(std::size_t n, Proj&& proj, ExecMode mode = ExecMode::Auto) {
    return blocked_reduce<SumPair>(
        n, SumPair{},
        [&](std::size_t lo, std::size_t hi) {
            SumPair s;
            for (std::size_t i = lo; i < hi; ++i) {
                const SumPair c = proj(i);
                s.a += c.a;
                s.b += c.b;
            }
            return s;
        },
        [](SumPair x, SumPair y) { return SumPair{x.a + y.a, x.b + y.b}; }, mode);
}

template <class Proj>
double max_abs(std::size_t n, Proj&& proj, ExecMode mode = ExecMode::Auto) {
    return blocked_reduce<double>(
        n, 0.0,
        [&](std::size_t lo, std::size_t hi) {
            double m = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                const double v = proj(i);
                const double a = v < 0 ? -v : v;
                if (a > m) m = a;
            }
            return m;
        },
        [](double a, double b) { return a > b ? a : b; }, mode);
}

struct MinMax {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
};

template <class Proj>
MinMax min_max(std::size_t n, Proj&& proj, ExecMode mode = ExecMode::Auto) {
    return blocked_reduce<MinMax>(
        n, MinMax{},
        [&](std::size_t lo, std::size_t hi) {
            MinMax m;
            for (std::size_t i = lo; i < hi; ++i) {
                const double v = proj(i);
                if (v < m.min) m.min = v;
                if (v > m.max) m.max = v;
            }
            return m;
        },
        [](MinMax x, MinMax y) {
            return MinMax{x.min < y.min ? x.min : y.min, x.max > y.max ? x.max : y.max};
        },
        mode);
}

template <class Pred>
std::size_t count_if(std::size_t n, Pred&& pred, ExecMode mode = ExecMode::Auto) {
    return blocked_reduce<std::size_t>(
        n, std::size_t{0},
        [&](std::size_t lo, std::size_t hi) {
            std::size_t c = 0;
            for (std::size_t i = lo; i < hi; ++i) c += pred(i) ? 1 : 0;
            return c;
        },
        [](std::size_t a, std::size_t b) { return a + b; }, mode);
}

}  // namespace fingersense::kernels
