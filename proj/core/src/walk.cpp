#include "cmaj/walk.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

namespace cmaj {
namespace {

constexpr std::size_t kMaxSubsetScan = 24;

// lcm(1, ..., 24); key(S) = sum(S) * L / |S| is an integer encoding of the mean.
constexpr std::int64_t kSizeLcm = 5354228880LL;

bool distinct_means_exact(const std::vector<Rational>& xs) {
  const std::size_t n = xs.size();
  std::vector<Rational> means;
  means.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) s += xs[i];
    means.emplace_back(s / std::popcount(mask));
  }
  std::sort(means.begin(), means.end());
  return std::adjacent_find(means.begin(), means.end()) == means.end();
}

}  // namespace

WalkPath build_walk(const std::vector<Numeric>& increments) {
  if (increments.empty()) return build_walk(std::vector<Rational>{});
  const bool exact = increments.front().is_exact();
  for (const auto& x : increments)
    if (x.is_exact() != exact) fail(ErrorCode::InvalidInput, "walk mixes binary64 and rational increments");
  if (exact) {
    std::vector<Rational> xs;
    xs.reserve(increments.size());
    for (const auto& x : increments) xs.push_back(std::get<Rational>(x.value()));
    return build_walk(std::move(xs));
  }
  std::vector<double> xs;
  xs.reserve(increments.size());
  for (const auto& x : increments) xs.push_back(std::get<double>(x.value()));
  return build_walk(std::move(xs));
}

std::vector<Numeric> increments_of(const WalkPath& walk) {
  return std::visit(
      [](const auto& w) {
        std::vector<Numeric> out;
        for (const auto& x : w.increments) out.emplace_back(x);
        return out;
      },
      walk);
}

std::vector<Numeric> values_of(const WalkPath& walk) {
  return std::visit(
      [](const auto& w) {
        std::vector<Numeric> out;
        for (const auto& x : w.values) out.emplace_back(x);
        return out;
      },
      walk);
}

std::size_t walk_size(const WalkPath& walk) {
  return std::visit([](const auto& w) { return w.size(); }, walk);
}

bool check_assumption_a(const std::vector<Rational>& increments) {
  const std::size_t n = increments.size();
  if (n > kMaxSubsetScan)
    fail(ErrorCode::CapacityExceeded, "subset-mean scan is limited to " + std::to_string(kMaxSubsetScan) + " increments");
  if (n <= 1) return true;

  // Scale to integers; if every key fits in 62 bits, compare integer keys
  // enumerated in Gray-code order, otherwise fall back to rationals.
  BigInt den = 1;
  for (const auto& x : increments) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> scaled;
  BigInt bound = 0;
  for (const auto& x : increments) {
    scaled.push_back(x.get_num() * (den / x.get_den()));
    bound += abs(scaled.back());
  }
  if (bound * kSizeLcm >= (BigInt(1) << 62)) return distinct_means_exact(increments);

  std::vector<std::int64_t> v;
  for (const auto& s : scaled) v.push_back(s.get_si());
  std::vector<std::int64_t> keys;
  keys.reserve((std::size_t{1} << n) - 1);
  std::int64_t sum = 0;
  int count = 0;
  std::uint32_t gray = 0;
  for (std::uint32_t i = 1; i < (std::uint32_t{1} << n); ++i) {
    const int bit = std::countr_zero(i);
    gray ^= std::uint32_t{1} << bit;
    if (gray >> bit & 1U) {
      sum += v[static_cast<std::size_t>(bit)];
      ++count;
    } else {
      sum -= v[static_cast<std::size_t>(bit)];
      --count;
    }
    keys.push_back(sum * (kSizeLcm / count));
  }
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

bool check_assumption_a(const std::vector<double>& increments) {
  std::vector<Rational> xs;
  xs.reserve(increments.size());
  for (double x : increments) xs.push_back(rational_from_double(x));
  return check_assumption_a(xs);
}

}  // namespace cmaj
