#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace abstain {

// 12 significant digits, "inf" for infinities.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace abstain
