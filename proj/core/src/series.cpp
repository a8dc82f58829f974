#include "cmaj/series.hpp"

#include <algorithm>

#include "cmaj/error.hpp"

namespace cmaj {
namespace {

void same_order(const UnivariateSeries& a, const UnivariateSeries& b) {
  if (a.order() != b.order()) fail(ErrorCode::InvalidInput, "series truncation orders differ");
}

}  // namespace

UnivariateSeries::UnivariateSeries(std::size_t order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  c_.resize(order + 1);
}

UnivariateSeries UnivariateSeries::constant(std::size_t order, const Rational& c) {
  UnivariateSeries s(order);
  s[0] = c;
  return s;
}

UnivariateSeries UnivariateSeries::minus_log_one_minus(std::size_t order) {
  UnivariateSeries s(order);
  for (std::size_t k = 1; k <= order; ++k) s[k] = Rational(1, static_cast<unsigned long>(k));
  return s;
}

bool UnivariateSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

UnivariateSeries& UnivariateSeries::operator+=(const UnivariateSeries& o) {
  same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

UnivariateSeries& UnivariateSeries::operator-=(const UnivariateSeries& o) {
  same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

UnivariateSeries& UnivariateSeries::operator*=(const Rational& k) {
  for (auto& x : c_) x *= k;
  return *this;
}

UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b) {
  same_order(a, b);
  UnivariateSeries out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= a.order(); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

UnivariateSeries UnivariateSeries::exp() const {
  if (c_[0] != 0) fail(ErrorCode::InvalidInput, "exp needs a zero constant term");
  UnivariateSeries f(order());
  f[0] = 1;
  for (std::size_t n = 1; n <= order(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (c_[k] != 0) acc += static_cast<long>(k) * c_[k] * f[n - k];
    f[n] = acc / static_cast<long>(n);
  }
  return f;
}

UnivariateSeries UnivariateSeries::log() const {
  if (c_[0] != 1) fail(ErrorCode::InvalidInput, "log needs constant term 1");
  UnivariateSeries g(order());
  for (std::size_t n = 1; n <= order(); ++n) {
    Rational acc = static_cast<long>(n) * c_[n];
    for (std::size_t k = 1; k < n; ++k)
      if (g[k] != 0) acc -= static_cast<long>(k) * g[k] * c_[n - k];
    g[n] = acc / static_cast<long>(n);
  }
  return g;
}

UnivariateSeries UnivariateSeries::reciprocal() const {
  if (c_[0] == 0) fail(ErrorCode::InvalidInput, "reciprocal needs a nonzero constant term");
  UnivariateSeries r(order());
  const Rational inv = 1 / c_[0];
  r[0] = inv;
  for (std::size_t n = 1; n <= order(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (c_[k] != 0) acc += c_[k] * r[n - k];
    r[n] = -acc * inv;
  }
  return r;
}

double UnivariateSeries::evaluate(double x) const {
  double acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].get_d();
  return acc;
}

std::string UnivariateSeries::str() const {
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(c_[k]);
    if (k > 0) s += "*x^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

BivariateSeries::BivariateSeries(std::size_t order_s, std::size_t order_t)
    : order_s_(order_s), rows_(order_t + 1, UnivariateSeries(order_s)) {}

BivariateSeries BivariateSeries::exp_t_times(const UnivariateSeries& g, std::size_t order_t) {
  if (g[0] != 0) fail(ErrorCode::InvalidInput, "exp(t g) needs g with a zero constant term");
  BivariateSeries out(g.order(), order_t);
  UnivariateSeries power = UnivariateSeries::constant(g.order(), 1);
  for (std::size_t m = 0; m <= order_t; ++m) {
    out.rows_[m] = power * (1 / factorial(static_cast<unsigned>(m)));
    power = power * g;
  }
  return out;
}

void BivariateSeries::divide_by_one_plus_t(const UnivariateSeries& a) {
  if (a[0] != 0) fail(ErrorCode::InvalidInput, "factor needs a zero constant term");
  for (std::size_t m = 1; m < rows_.size(); ++m) rows_[m] -= a * rows_[m - 1];
}

void BivariateSeries::multiply_by_one_plus_t(const UnivariateSeries& b) {
  for (std::size_t m = rows_.size(); m-- > 1;) rows_[m] += b * rows_[m - 1];
}

}  // namespace cmaj
