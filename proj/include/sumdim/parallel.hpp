#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sumdim::util {

// Worker count: SUMDIM_THREADS if set, else hardware concurrency, at least 1.
inline int thread_budget() {
  if (const char* env = std::getenv("SUMDIM_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

// Runs f(chunk) for chunk in [0, nchunks).  Chunking is fixed by the caller,
// so any reduction indexed by chunk is reproducible no matter how many
// threads actually execute.
inline void parallel_chunks(int nchunks, const std::function<void(int)>& f) {
  if (nchunks <= 0) return;
  int workers = std::min(thread_budget(), nchunks);
  if (workers <= 1) {
    for (int c = 0; c < nchunks; ++c) f(c);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= nchunks || failed.load()) return;
      try {
        f(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sumdim::util
