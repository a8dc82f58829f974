#include "cmaj/numeric.hpp"

#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "cmaj/error.hpp"

namespace cmaj {
namespace {

constexpr std::int64_t kExactIntLimit = std::int64_t{1} << 53;

int sign_det_exact(std::int64_t a, const Rational& y1, const Rational& y2, std::int64_t b,
                   const Rational& y3, const Rational& y4) {
  Rational lhs = y1 - y2;
  lhs *= Rational(static_cast<long>(a));
  Rational rhs = y3 - y4;
  rhs *= Rational(static_cast<long>(b));
  return cmp(lhs, rhs);
}

}  // namespace

int sign_det(std::int64_t a, const Rational& y1, const Rational& y2, std::int64_t b,
             const Rational& y3, const Rational& y4) {
  return sign_det_exact(a, y1, y2, b, y3, y4);
}

int sign_det(std::int64_t a, double y1, double y2, std::int64_t b, double y3, double y4) {
  if (std::llabs(a) < kExactIntLimit && std::llabs(b) < kExactIntLimit) {
    const double p1 = static_cast<double>(a) * (y1 - y2);
    const double p2 = static_cast<double>(b) * (y3 - y4);
    const double r = p1 - p2;
    const double mag = std::fabs(p1) + std::fabs(p2);
    if (std::isfinite(mag) && mag > 1e-290) {
      const double bound = 8.0 * DBL_EPSILON * mag;
      if (r > bound) return 1;
      if (r < -bound) return -1;
    }
  }
  return sign_det_exact(a, rational_from_double(y1), rational_from_double(y2), b,
                        rational_from_double(y3), rational_from_double(y4));
}

int compare(double a, double b) { return (a > b) - (a < b); }
int compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return (c > 0) - (c < 0);
}

double checked_add(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  if (err != 0.0 || !std::isfinite(s)) {
    fail(ErrorCode::InexactArithmetic,
         "binary64 sum is not exact; keep continuous increments on the sampling grid");
  }
  return s;
}

Rational checked_add(const Rational& a, const Rational& b) { return a + b; }

double checked_sub(double a, double b) { return checked_add(a, -b); }
Rational checked_sub(const Rational& a, const Rational& b) { return a - b; }

Rational as_rational(double x) { return rational_from_double(x); }

std::string format_scalar(double x) {
  // Shortest form that reads back to the same double.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_scalar(const Rational& x) { return x.get_str(); }

double Numeric::to_double() const {
  return std::visit([](const auto& v) { return as_double(v); }, value_);
}

Rational Numeric::to_rational() const {
  return std::visit([](const auto& v) { return Rational(as_rational(v)); }, value_);
}

std::string Numeric::str() const {
  return std::visit([](const auto& v) { return format_scalar(v); }, value_);
}

int compare(const Numeric& a, const Numeric& b) {
  if (!a.is_exact() && !b.is_exact()) {
    return compare(std::get<double>(a.value_), std::get<double>(b.value_));
  }
  return compare(a.to_rational(), b.to_rational());
}

}  // namespace cmaj
