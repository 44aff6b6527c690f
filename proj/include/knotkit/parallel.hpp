#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace knotkit {

// Process-wide worker cap. 0 = hardware concurrency. Settable from the CLI
// (--threads / KNOT_THREADS). Results of all parallel reductions are
// independent of this value: work is split into fixed chunks and partial
// results are combined in chunk order.
inline std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{0};
  return cap;
}

inline void set_max_threads(int n) { thread_cap().store(n < 0 ? 0 : n); }

inline int effective_threads() {
  int cap = thread_cap().load();
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (cap <= 0 || cap > hw) cap = hw;
  return cap;
}

namespace detail_parallel {
inline thread_local bool inside_worker = false;
}

// Runs fn(i) for i in [0, n) on a pool of workers; fn must only write to
// its own slot of any output. Chunks are dealt dynamically but outputs are
// indexed, so the result layout does not depend on scheduling. Nested calls
// from inside a worker run serially.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers = detail_parallel::inside_worker
                          ? 1
                          : static_cast<int>(std::min<std::int64_t>(effective_threads(), n));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      detail_parallel::inside_worker = true;
      while (true) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

// Deterministic parallel sum over [0, n): term(i) values are accumulated
// per fixed-size block, then blocks are added in index order.
inline double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& term,
                           std::int64_t block = 1024) {
  if (n <= 0) return 0.0;
  const std::int64_t nblocks = (n + block - 1) / block;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  parallel_for(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * block;
    const std::int64_t hi = std::min(n, lo + block);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace knotkit
