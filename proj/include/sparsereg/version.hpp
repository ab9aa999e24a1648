#pragma once

namespace sparsereg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sparsereg
