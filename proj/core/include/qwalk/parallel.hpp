#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace qwalk {

/// Worker cap: QWALK_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("QWALK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(std::min(v, 256L));
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace qwalk
