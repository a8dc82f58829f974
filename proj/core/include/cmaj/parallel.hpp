#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>
#include <thread>
#include <vector>

#include "cmaj/rng.hpp"

namespace cmaj {

// Worker count used by the Monte Carlo loops (1 by default). Results never
// depend on it: work is split into a fixed number of chunks, each with its
// own forked stream, and reduced in chunk order.
void set_worker_count(unsigned workers);
unsigned worker_count();

inline constexpr std::size_t kMonteCarloChunks = 64;

// Runs body(count, stream, chunk_index) over kMonteCarloChunks chunks whose
// counts sum to `total`; returns the per-chunk results in chunk order.
template <class Body>
auto run_chunked(std::size_t total, RngStream& rng, Body body) {
  using Result = decltype(body(std::size_t{}, std::declval<RngStream&>(), std::size_t{}));
  const std::size_t chunks = kMonteCarloChunks;
  std::vector<RngStream> streams;
  streams.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) streams.push_back(rng.fork("mc-chunk"));
  std::vector<Result> results(chunks);
  auto count_of = [&](std::size_t c) { return total / chunks + (c < total % chunks ? 1 : 0); };

  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) results[c] = body(count_of(c), streams[c], c);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          results[c] = body(count_of(c), streams[c], c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace cmaj
