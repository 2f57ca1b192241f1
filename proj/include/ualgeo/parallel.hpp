#ifndef UALGEO_PARALLEL_HPP_
#define UALGEO_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ualgeo {

  // Runs fn(i) for i in [0, count) on up to `jobs` threads. Callers write
  // results into slot i so that aggregation order never depends on
  // scheduling. The exception thrown for the smallest i is rethrown.
  template <typename Fn>
  void parallel_for(std::uint64_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 2) {
      for (std::uint64_t i = 0; i < count; ++i) {
        fn(i);
      }
      return;
    }
    std::atomic<std::uint64_t> next{0};
    std::mutex                 mtx;
    std::exception_ptr         error;
    std::uint64_t              error_index = UINT64_MAX;

    auto worker = [&] {
      while (true) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= count) {
          return;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mtx);
          if (i < error_index) {
            error_index = i;
            error       = std::current_exception();
          }
        }
      }
    };
    std::vector<std::thread> threads;
    unsigned const           n = static_cast<unsigned>(
        std::min<std::uint64_t>(jobs, count));
    threads.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
      threads.emplace_back(worker);
    }
    for (auto& t : threads) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace ualgeo

#endif  // UALGEO_PARALLEL_HPP_
