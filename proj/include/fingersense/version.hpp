#pragma once

namespace fingersense {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fingersense
