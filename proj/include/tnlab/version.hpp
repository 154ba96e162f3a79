#pragma once

namespace tnlab {

inline constexpr const char* kToolVersion = "tnlab 1.0.0";

}  // namespace tnlab
