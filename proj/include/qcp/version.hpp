#pragma once

namespace qcp {

inline constexpr const char* version = "0.1.0";

}  // namespace qcp
