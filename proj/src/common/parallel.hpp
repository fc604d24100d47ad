// SPDX-FileCopyrightText: Copyright (c) 2026 The pyrobed authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PYROBED_COMMON_PARALLEL_HPP
#define PYROBED_COMMON_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pyrobed {

/// Static-chunked parallel loop. Items must be independent; any exception is
/// re-thrown on the calling thread. Results stay deterministic for any thread
/// count because callers write to pre-sized per-item slots.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  const unsigned nw = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (unsigned w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      const std::size_t lo = n * w / nw;
      const std::size_t hi = n * (w + 1) / nw;
      try {
        for (std::size_t i = lo; i < hi; ++i)
          fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    });
  }
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace pyrobed

#endif
