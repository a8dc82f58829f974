#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmaj/rational.hpp"

namespace cmaj {

// Power series in one variable truncated after degree order().
class UnivariateSeries {
 public:
  explicit UnivariateSeries(std::size_t order = 0) : c_(order + 1) {}
  UnivariateSeries(std::size_t order, std::vector<Rational> coeffs);

  static UnivariateSeries constant(std::size_t order, const Rational& c);
  // -log(1 - x) = sum_{k>=1} x^k / k.
  static UnivariateSeries minus_log_one_minus(std::size_t order);

  std::size_t order() const noexcept { return c_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return c_[k]; }
  Rational& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  bool is_zero() const;

  UnivariateSeries& operator+=(const UnivariateSeries& o);
  UnivariateSeries& operator-=(const UnivariateSeries& o);
  UnivariateSeries& operator*=(const Rational& k);
  friend UnivariateSeries operator+(UnivariateSeries a, const UnivariateSeries& b) { return a += b; }
  friend UnivariateSeries operator-(UnivariateSeries a, const UnivariateSeries& b) { return a -= b; }
  friend UnivariateSeries operator*(UnivariateSeries a, const Rational& k) { return a *= k; }
  friend UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b);
  friend bool operator==(const UnivariateSeries&, const UnivariateSeries&) = default;

  // Requires a zero constant term.
  UnivariateSeries exp() const;
  // Requires constant term 1.
  UnivariateSeries log() const;
  // Requires a nonzero constant term.
  UnivariateSeries reciprocal() const;

  double evaluate(double x) const;
  std::string str() const;

 private:
  std::vector<Rational> c_;
};

// Power series in (s, t): coefficient (n, m) of s^n t^m for n <= order_s,
// m <= order_t. Stored as one s-series per power of t.
class BivariateSeries {
 public:
  BivariateSeries(std::size_t order_s, std::size_t order_t);

  std::size_t order_s() const noexcept { return order_s_; }
  std::size_t order_t() const noexcept { return rows_.size() - 1; }
  const Rational& coeff(std::size_t n, std::size_t m) const { return rows_[m][n]; }
  Rational& coeff(std::size_t n, std::size_t m) { return rows_[m][n]; }
  // Coefficient of t^m as a series in s.
  const UnivariateSeries& t_row(std::size_t m) const { return rows_[m]; }
  UnivariateSeries& t_row(std::size_t m) { return rows_[m]; }

  // exp(t g(s)) = sum_m t^m g^m / m!, g with zero constant term.
  static BivariateSeries exp_t_times(const UnivariateSeries& g, std::size_t order_t);

  // *this / (1 + t a(s)), a with zero constant term.
  void divide_by_one_plus_t(const UnivariateSeries& a);
  // *this * (1 + t b(s)).
  void multiply_by_one_plus_t(const UnivariateSeries& b);

  friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

 private:
  std::size_t order_s_;
  std::vector<UnivariateSeries> rows_;
};

}  // namespace cmaj
