#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace wienerkit {

// Worker cap. Initialised from WIENERKIT_THREADS, else hardware parallelism.
unsigned max_threads() noexcept;
// 0 restores the default.
void set_max_threads(unsigned n) noexcept;

// out[i] = f(i) for i < n, evaluated on up to max_threads() threads. Results
// are stored by index; if any call throws, the exception with the lowest
// index is rethrown after all workers finish.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace wienerkit
