#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cmaj/rational.hpp"
#include "cmaj/walk.hpp"

namespace cmaj::test {

inline Rational R(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

inline std::vector<Rational> rationals(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> v;
  for (auto x : xs) v.push_back(R(x));
  return v;
}

inline Walk<Rational> rwalk(std::initializer_list<std::int64_t> xs) { return build_walk(rationals(xs)); }

}  // namespace cmaj::test
