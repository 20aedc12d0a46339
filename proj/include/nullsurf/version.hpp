#pragma once

namespace nullsurf {
inline constexpr const char* kVersion = "nullsurf 0.1.0";
}
