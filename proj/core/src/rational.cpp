#include "cmaj/rational.hpp"

#include <cmath>

#include "cmaj/error.hpp"

namespace cmaj {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator");
  Rational r;
  mpz_set_si(r.get_num_mpz_t(), static_cast<long>(num));
  mpz_set_si(r.get_den_mpz_t(), static_cast<long>(den));
  r.canonicalize();
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidInput, "non-finite value has no rational form");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    const auto b = v.find_first_not_of(" \t");
    const auto e = v.find_last_not_of(" \t");
    v = b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty rational literal");

  const auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    // Decimal literal: exact base-10 conversion, not via double.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const auto frac_len = s.size() - dot - 1;
    BigInt num;
    if (num.set_str(digits == "-" || digits.empty() ? "0" : digits, 10) != 0)
      fail(ErrorCode::InvalidInput, "bad decimal literal '" + s + "'");
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return make_rational(num, den);
  }

  Rational r;
  if (r.set_str(s, 10) != 0) fail(ErrorCode::InvalidInput, "bad rational literal '" + s + "'");
  if (r.get_den() == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

BigInt factorial_int(unsigned n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Rational factorial(unsigned n) { return Rational(factorial_int(n)); }

}  // namespace cmaj
