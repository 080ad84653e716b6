#pragma once

namespace footclust {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace footclust
