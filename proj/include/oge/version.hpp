#pragma once

namespace oge {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kModelFormatVersion = 1;

}
