#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cmaj {

using BigInt = mpz_class;
// mpq_class keeps results of arithmetic in lowest terms with a positive
// denominator; values built from a (num, den) pair go through make_rational.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

// Lossless: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// Accepts "p", "p/q", "-p/q" and plain decimals such as "0.25".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

Rational factorial(unsigned n);
BigInt factorial_int(unsigned n);

}  // namespace cmaj
