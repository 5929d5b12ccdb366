#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fingersense {

enum class Phase { Loading, Unloading };

enum class SensorId : std::size_t { MCP = 0, PIP = 1, DIP = 2 };

inline constexpr std::array<const char*, 3> kSensorNames{"mcp", "pip", "dip"};

/// One time-ordered sample of the three-sensor finger: actuation angle,
/// ground-truth joint angles, raw optical intensities, and sweep phase.
struct TrialRecord {
    double t_s = 0.0;
    double pulley_deg = 0.0;
    std::array<double, 3> theta_deg{0.0, 0.0, 0.0};   // MCP, PIP, DIP
    std::array<double, 3> intensity{0.0, 0.0, 0.0};   // nW/cm^2
    Phase phase = Phase::Loading;
};

struct TrialLog {
    std::vector<TrialRecord> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

}  // namespace fingersense
