#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace wavecorr {

/// Worker cap for internal parallelism. WAVECORR_THREADS=k caps it at k;
/// 0 or unset means one worker per hardware thread.
inline unsigned thread_limit() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("WAVECORR_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
  }
  return hw;
}

/// Runs f(i) for i in [begin, end) across worker threads in contiguous
/// chunks. Each index is processed exactly once, so any f writing to
/// index-disjoint slots gives results identical to a serial loop.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, F&& f) {
  const std::size_t count = end > begin ? end - begin : 0;
  const unsigned workers = thread_limit();
  if (count < 2 || workers < 2) {
    for (std::size_t i = begin; i < end; ++i) f(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, count);
  const std::size_t chunk = (count + nthreads - 1) / nthreads;
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t lo = begin + t * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace wavecorr
