#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cosmoferm::detail {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Work is split
// round-robin by index, so each i is handled exactly once and results written
// to slot i do not depend on the worker count. The first exception (by
// thread) is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const std::size_t threads = std::clamp<std::size_t>(
      workers < 1 ? 1 : static_cast<std::size_t>(workers), 1,
      std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cosmoferm::detail
