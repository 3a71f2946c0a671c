#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ufg::detail {

// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk) on up to
// `threads` workers. Chunk boundaries depend only on n and the chunk count, so
// callers that concatenate per-chunk results in chunk order get the same
// output for every thread count.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, std::size_t chunks, Fn&& fn) {
  if (n == 0) return;
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  const auto bounds = [&](std::size_t c) { return n * c / chunks; };
  const std::size_t workers =
      std::min<std::size_t>(chunks, static_cast<std::size_t>(std::max(1, threads)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(bounds(c), bounds(c + 1), c);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) {
          fn(bounds(c), bounds(c + 1), c);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ufg::detail
