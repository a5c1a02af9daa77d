#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gcs {

// Worker cap: GCS_THREADS when set (clamped to [1, 256]), otherwise
// min(hardware concurrency, 8).
inline int worker_count() {
  if (const char* env = std::getenv("GCS_THREADS")) {
    char* end = nullptr;
    long requested = std::strtol(env, &end, 10);
    if (end != env && requested >= 1) {
      return static_cast<int>(std::min(requested, 256L));
    }
    return 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

// Static contiguous partition of [0, count) over the worker threads.
// Each index is processed exactly once, independently of the worker
// count, so writes into preallocated slots are bit-deterministic.
template <class Body>
void parallel_for(int count, Body&& body) {
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  int chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    int begin = w * chunk;
    int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (int i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& thread : pool) thread.join();
}

}  // namespace gcs
