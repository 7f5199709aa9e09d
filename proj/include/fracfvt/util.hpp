#ifndef FRACFVT_UTIL_HPP
#define FRACFVT_UTIL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fracfvt {

// Parallelism budget: FRACFVT_THREADS caps the worker count, default is the
// hardware concurrency.
inline int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("FRACFVT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) return cap;
    if (cap >= 1) return cap;
  }
  return hw;
}

// Runs fn(i) for i in [0, n) on up to thread_budget() workers. Tasks must be
// independent; exceptions propagate from the first failing task.
inline void parallel_for_index(std::size_t n,
                               const std::function<void(std::size_t)>& fn) {
  const auto workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fracfvt

#endif
