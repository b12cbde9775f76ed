#pragma once

namespace sumdim {
inline constexpr const char* kVersion = "0.1.0";
}
