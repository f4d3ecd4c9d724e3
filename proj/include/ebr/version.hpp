#pragma once

namespace ebr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ebr
