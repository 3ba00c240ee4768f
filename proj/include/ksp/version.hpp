#pragma once

namespace ksp {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace ksp
