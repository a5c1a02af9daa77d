#pragma once

#include <cstdio>
#include <string>

namespace gcs {

// Fixed 17-significant-digit decimal rendering: enough to round-trip any
// double exactly, and byte-stable across runs and platforms.
inline std::string format17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace gcs
