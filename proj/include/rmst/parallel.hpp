#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace rmst {

// Runs fn(i) for i in [0, count) on up to `threads` workers with a static
// contiguous partition. The first exception thrown by any worker is rethrown
// on the calling thread.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const int begin = count * t / threads;
    const int end = count * (t + 1) / threads;
    workers.emplace_back([&, t, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rmst
