#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>

#include "cmaj/rational.hpp"

namespace cmaj {

// The two scalar representations a walk may carry. Binary64 values are
// compared as the exact dyadic rationals they denote, never with tolerances.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

// sign(a * (y1 - y2) - b * (y3 - y4)), evaluated exactly. This single
// determinant covers orientation tests, slope comparisons and mean
// comparisons; the double overload uses a floating-point filter and falls
// back to rational arithmetic when the filter cannot certify the sign.
int sign_det(std::int64_t a, double y1, double y2, std::int64_t b, double y3, double y4);
int sign_det(std::int64_t a, const Rational& y1, const Rational& y2, std::int64_t b,
             const Rational& y3, const Rational& y4);

// Orientation of (t1,y1),(t2,y2),(t3,y3): >0 for a left (counter-clockwise)
// turn, 0 when colinear.
template <Scalar T>
int orientation(std::int64_t t1, const T& y1, std::int64_t t2, const T& y2, std::int64_t t3,
                const T& y3) {
  return sign_det(t2 - t1, y3, y1, t3 - t1, y2, y1);
}

// Compare inc1/len1 with inc2/len2 exactly (lengths positive).
template <Scalar T>
int compare_ratio(const T& inc1, std::int64_t len1, const T& inc2, std::int64_t len2) {
  return sign_det(len2, inc1, T(0), len1, inc2, T(0));
}

int compare(double a, double b);
int compare(const Rational& a, const Rational& b);

// Addition that refuses to round: binary64 sums must be exact.
double checked_add(double a, double b);
Rational checked_add(const Rational& a, const Rational& b);
double checked_sub(double a, double b);
Rational checked_sub(const Rational& a, const Rational& b);

inline double as_double(double x) { return x; }
inline double as_double(const Rational& x) { return x.get_d(); }
Rational as_rational(double x);
inline const Rational& as_rational(const Rational& x) { return x; }

template <Scalar T>
T ratio(const T& num, std::int64_t den) {
  if constexpr (std::is_same_v<T, double>) {
    return num / static_cast<double>(den);
  } else {
    return Rational(num / Rational(static_cast<long>(den)));
  }
}

std::string format_scalar(double x);
std::string format_scalar(const Rational& x);

// Tagged scalar exposed at API boundaries that accept either representation.
class Numeric {
 public:
  Numeric() : value_(0.0) {}
  Numeric(double x) : value_(x) {}                // NOLINT(google-explicit-constructor)
  Numeric(Rational x) : value_(std::move(x)) {}   // NOLINT(google-explicit-constructor)
  Numeric(int x) : value_(Rational(x)) {}         // NOLINT(google-explicit-constructor)

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  double to_double() const;
  Rational to_rational() const;
  const std::variant<double, Rational>& value() const noexcept { return value_; }
  std::string str() const;

  friend int compare(const Numeric& a, const Numeric& b);
  friend bool operator==(const Numeric& a, const Numeric& b) { return compare(a, b) == 0; }
  friend bool operator<(const Numeric& a, const Numeric& b) { return compare(a, b) < 0; }

 private:
  std::variant<double, Rational> value_;
};

}  // namespace cmaj
