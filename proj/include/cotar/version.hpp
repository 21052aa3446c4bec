#pragma once

namespace cotar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cotar
