#pragma once

namespace gamred {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gamred
