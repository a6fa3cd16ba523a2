#pragma once

namespace dgk {
inline constexpr const char* kVersion = "0.1.0";
}
