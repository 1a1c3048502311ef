#pragma once

namespace saddlebench {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace saddlebench
