#pragma once

#define PARLEV_VERSION_MAJOR 0
#define PARLEV_VERSION_MINOR 3
#define PARLEV_VERSION_PATCH 0

namespace parlev {
inline constexpr const char* version = "0.3.0";
} // namespace parlev
