#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace pct {

// Run fn(i) for i in [0, nitems). Items are independent; results must be
// written to per-index slots so the merge order never depends on
// scheduling. The first exception by item index is rethrown.
template <typename F>
void parallel_for(size_t nitems, uint32_t jobs, F&& fn) {
  if (jobs <= 1 || nitems <= 1) {
    for (size_t i = 0; i < nitems; ++i) fn(i);
    return;
  }
  uint32_t nthreads = static_cast<uint32_t>(std::min<size_t>(jobs, nitems));
  std::vector<std::exception_ptr> errors(nitems);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (uint32_t t = 0; t < nthreads; ++t) {
    threads.emplace_back([&, t] {
      for (size_t i = t; i < nitems; i += nthreads) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  for (size_t i = 0; i < nitems; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

}  // namespace pct
