#include "cmaj/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "cmaj/error.hpp"

namespace cmaj {
namespace {

constexpr double kMinExpected = 5.0;

// Groups of consecutive cell indices whose summed weight reaches `minimum`;
// a short final group is merged into the previous one.
std::vector<std::vector<std::size_t>> pool_cells(const std::vector<double>& weight, double minimum) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> current;
  double mass = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    current.push_back(i);
    mass += weight[i];
    if (mass >= minimum) {
      groups.push_back(std::move(current));
      current.clear();
      mass = 0;
    }
  }
  if (!current.empty()) {
    if (groups.empty())
      groups.push_back(std::move(current));
    else
      groups.back().insert(groups.back().end(), current.begin(), current.end());
  }
  return groups;
}

void finish_chi_square(TestResult& r, double dof, double alpha) {
  const boost::math::chi_squared dist(dof);
  r.threshold = boost::math::quantile(boost::math::complement(dist, alpha));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  r.pass = r.statistic <= r.threshold;
}

}  // namespace

TestResult chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected_prob,
                           double alpha) {
  if (observed.size() != expected_prob.size()) fail(ErrorCode::InvalidTest, "observed and expected sizes differ");
  const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  const double mass = std::accumulate(expected_prob.begin(), expected_prob.end(), 0.0);
  if (!(n > 0) || !(mass > 0)) fail(ErrorCode::InvalidTest, "chi-square needs observations and expected mass");
  std::vector<double> expected;
  for (double p : expected_prob) expected.push_back(n * p / mass);
  const auto groups = pool_cells(expected, kMinExpected);
  if (groups.size() < 2) fail(ErrorCode::InvalidTest, "chi-square needs at least two cells after pooling");
  TestResult r;
  r.samples = static_cast<std::size_t>(n);
  r.cells = groups.size();
  for (const auto& g : groups) {
    double o = 0, e = 0;
    for (auto i : g) {
      o += observed[i];
      e += expected[i];
    }
    if (e > 0)
      r.statistic += (o - e) * (o - e) / e;
    else if (o > 0)
      r.statistic = INFINITY;
  }
  r.effect_size = std::sqrt(r.statistic / n);
  finish_chi_square(r, static_cast<double>(groups.size() - 1), alpha);
  return r;
}

TestResult chi_square_integer(const std::vector<std::size_t>& outcomes, const std::function<double(std::size_t)>& pmf,
                              std::size_t last, double alpha) {
  std::vector<double> obs(last + 2, 0.0), exp(last + 2, 0.0);
  for (auto x : outcomes) ++obs[std::min(x, last + 1)];
  double head = 0;
  for (std::size_t k = 0; k <= last; ++k) {
    exp[k] = pmf(k);
    head += exp[k];
  }
  exp[last + 1] = std::max(0.0, 1.0 - head);
  return chi_square_test(obs, exp, alpha);
}

TestResult chi_square_homogeneity(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidTest, "homogeneity rows differ in size");
  const double na = std::accumulate(a.begin(), a.end(), 0.0);
  const double nb = std::accumulate(b.begin(), b.end(), 0.0);
  if (!(na > 0) || !(nb > 0)) fail(ErrorCode::InvalidTest, "homogeneity needs two non-empty samples");
  const double n = na + nb;
  const double minimum = kMinExpected * n / std::min(na, nb);
  std::vector<double> col(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) col[i] = a[i] + b[i];
  const auto groups = pool_cells(col, minimum);
  if (groups.size() < 2) fail(ErrorCode::InvalidTest, "homogeneity needs at least two cells after pooling");
  TestResult r;
  r.samples = static_cast<std::size_t>(n);
  r.cells = groups.size();
  for (const auto& g : groups) {
    double oa = 0, ob = 0;
    for (auto i : g) {
      oa += a[i];
      ob += b[i];
    }
    const double c = oa + ob;
    const double ea = c * na / n, eb = c * nb / n;
    r.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  r.effect_size = std::sqrt(r.statistic / n);
  finish_chi_square(r, static_cast<double>(groups.size() - 1), alpha);
  return r;
}

double kolmogorov_cdf(double x) {
  if (x <= 0) return 0;
  if (x < 1.0) {
    // sqrt(2 pi)/x sum exp(-(2k-1)^2 pi^2 / (8 x^2))
    const double pi = 3.14159265358979323846;
    double s = 0;
    for (int k = 1; k <= 50; ++k) {
      const double t = (2.0 * k - 1) * pi / x;
      s += std::exp(-t * t / 8.0);
    }
    return std::sqrt(2 * pi) / x * s;
  }
  double s = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-300) break;
  }
  return 1 - 2 * s;
}

double kolmogorov_quantile(double p) {
  if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidParameter, "quantile level must lie in (0, 1)");
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TestResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf, double alpha) {
  if (sample.empty()) fail(ErrorCode::InvalidTest, "KS test needs a non-empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  TestResult r;
  r.samples = sample.size();
  r.effect_size = d;
  r.statistic = std::sqrt(n) * d;
  r.threshold = kolmogorov_quantile(1 - alpha);
  r.p_value = 1 - kolmogorov_cdf(r.statistic);
  r.pass = r.statistic <= r.threshold;
  return r;
}

TestResult ks_test(const std::vector<Numeric>& sample, const std::function<double(double)>& cdf, double alpha) {
  std::vector<double> xs;
  xs.reserve(sample.size());
  for (const auto& x : sample) xs.push_back(x.to_double());
  return ks_test(std::move(xs), cdf, alpha);
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.empty() || b.empty()) fail(ErrorCode::InvalidTest, "KS test needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  TestResult r;
  r.samples = a.size() + b.size();
  r.effect_size = d;
  r.statistic = std::sqrt(na * nb / (na + nb)) * d;
  r.threshold = kolmogorov_quantile(1 - alpha);
  r.p_value = 1 - kolmogorov_cdf(r.statistic);
  r.pass = r.statistic <= r.threshold;
  return r;
}

bool within_se(double value, double target, double se, double k) { return std::abs(value - target) <= k * se; }

}  // namespace cmaj
