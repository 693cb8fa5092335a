#pragma once

#include <string_view>

namespace johncheck {

inline constexpr std::string_view kToolName = "johncheck";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace johncheck
