#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cmaj {

// Seeded stream with labelled forking. A fork never advances the parent's
// engine, so the parent's draw sequence is unaffected by how many children
// are taken; the children are keyed by (parent key, label, fork ordinal).
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  RngStream fork(std::string_view label);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double uniform01();                                   // [0, 1)
  std::uint64_t uniform_index(std::uint64_t n);         // {0, ..., n-1}
  std::uint64_t key() const noexcept { return key_; }

 private:
  RngStream(std::uint64_t key, bool);

  std::uint64_t key_;
  std::uint64_t forks_ = 0;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cmaj
