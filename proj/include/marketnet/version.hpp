#pragma once

namespace marketnet {

inline constexpr const char* kToolName = "marketnet";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace marketnet
