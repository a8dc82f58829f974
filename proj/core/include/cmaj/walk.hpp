#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "cmaj/error.hpp"
#include "cmaj/numeric.hpp"

namespace cmaj {

// Points (j, S_j), j = 0..n, of a walk with S_0 = 0.
template <Scalar T>
struct Walk {
  std::vector<T> increments;
  std::vector<T> values;

  std::size_t size() const noexcept { return increments.size(); }
  friend bool operator==(const Walk&, const Walk&) = default;
};

// Prefix sums by left-to-right summation. Binary64 sums must be exact
// (InexactArithmetic otherwise), so values[j] - values[j-1] reproduces the
// increments bit for bit.
template <Scalar T>
Walk<T> build_walk(std::vector<T> increments) {
  Walk<T> w;
  w.values.reserve(increments.size() + 1);
  w.values.push_back(T(0));
  for (const auto& x : increments) w.values.push_back(checked_add(w.values.back(), x));
  w.increments = std::move(increments);
  return w;
}

// Walk of values[j] - values[0] over [first, last].
template <Scalar T>
Walk<T> sub_walk(const Walk<T>& w, std::size_t first, std::size_t last) {
  return build_walk(std::vector<T>(w.increments.begin() + static_cast<std::ptrdiff_t>(first),
                                   w.increments.begin() + static_cast<std::ptrdiff_t>(last)));
}

using WalkPath = std::variant<Walk<double>, Walk<Rational>>;

// Homogeneous representation required; mixing binary64 and rationals is
// InvalidInput. An empty list yields an exact walk.
WalkPath build_walk(const std::vector<Numeric>& increments);
std::vector<Numeric> increments_of(const WalkPath& walk);
std::vector<Numeric> values_of(const WalkPath& walk);
std::size_t walk_size(const WalkPath& walk);

// True iff the 2^n - 1 nonempty subset means are pairwise distinct; n <= 24.
bool check_assumption_a(const std::vector<Rational>& increments);
bool check_assumption_a(const std::vector<double>& increments);

}  // namespace cmaj
