#pragma once

namespace acsel {
inline constexpr const char* kVersion = "0.1.0";
}
