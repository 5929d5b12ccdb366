#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fingersense {

/// Seedable random source with a fixed, documented algorithm.
///
/// The engine is std::mt19937_64, whose output sequence is fully specified
/// by the C++ standard, and all variates are derived from it with explicit
/// transforms rather than std::*_distribution (whose algorithms are
/// implementation-defined). Identical seeds therefore produce identical
/// streams on any conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1): top 53 bits of one engine output.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller, cosine branch only.
    /// Consumes exactly two engine outputs per call.
    double normal() {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;          // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    std::uint64_t next_u64() { return engine_(); }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace fingersense
