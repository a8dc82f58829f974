#include "cmaj/rng.hpp"

#include "cmaj/error.hpp"

namespace cmaj {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : RngStream(splitmix64(seed), true) {}

RngStream::RngStream(std::uint64_t key, bool) : key_(key), engine_(splitmix64(key ^ 0x5bd1e995ULL)) {}

RngStream RngStream::fork(std::string_view label) {
  ++forks_;
  const std::uint64_t child = splitmix64(key_ ^ splitmix64(fnv1a(label) + forks_ * 0x9e3779b97f4a7c15ULL));
  return RngStream(child, true);
}

double RngStream::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::InvalidParameter, "uniform_index over an empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

}  // namespace cmaj
