#pragma once

namespace dgred {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dgred
