#pragma once

#include <cstdio>
#include <string>

namespace wigsim::csv {

// 17 significant digits round-trip any IEEE double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

}  // namespace wigsim::csv
