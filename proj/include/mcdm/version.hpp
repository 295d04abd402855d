#pragma once

namespace mcdm {

inline constexpr const char* kToolName = "mcdm";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mcdm
