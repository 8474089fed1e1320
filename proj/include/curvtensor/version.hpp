#pragma once

namespace curv {

inline constexpr const char* kToolName = "curvtensor";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace curv
