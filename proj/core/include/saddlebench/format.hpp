#pragma once

#include <cstdio>
#include <string>

namespace saddlebench {

// Shortest-faithful decimal form: %.17g round-trips every double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace saddlebench
