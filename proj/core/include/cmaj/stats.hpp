#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "cmaj/numeric.hpp"
#include "cmaj/rational.hpp"

namespace cmaj {

inline constexpr double kDefaultAlpha = 0.01;

struct TestResult {
  double statistic = 0;
  double threshold = 0;  // reject when statistic exceeds it
  double p_value = 1;
  double effect_size = 0;  // Cohen's w for chi-square, D for KS
  std::size_t cells = 0;   // retained cells after pooling (chi-square)
  std::size_t samples = 0;
  bool pass = false;
};

// Goodness of fit of observed counts to cell probabilities. Cells are pooled
// in order until each retained cell expects at least 5; probabilities are
// normalised to sum to 1. InvalidTest when fewer than two cells remain.
TestResult chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected_prob,
                           double alpha = kDefaultAlpha);

// Keyed form: every observed key must carry expected mass (else the test
// fails outright), and expected keys never observed count as zero.
template <class K, class Count, class Prob>
TestResult chi_square_test(const std::map<K, Count>& observed, const std::map<K, Prob>& expected,
                           double alpha = kDefaultAlpha) {
  std::vector<double> obs, exp;
  double stray = 0;
  for (const auto& [k, c] : observed)
    if (!expected.count(k)) stray += static_cast<double>(c);
  for (const auto& [k, p] : expected) {
    const auto it = observed.find(k);
    obs.push_back(it == observed.end() ? 0.0 : static_cast<double>(it->second));
    if constexpr (std::is_same_v<Prob, Rational>)
      exp.push_back(p.get_d());
    else
      exp.push_back(static_cast<double>(p));
  }
  auto r = chi_square_test(obs, exp, alpha);
  if (stray > 0) r.pass = false;
  return r;
}

// Counts of integer outcomes against a pmf on {0, 1, ...}; the cells past
// `last` are merged into one tail cell whose mass is 1 - sum pmf(0..last).
TestResult chi_square_integer(const std::vector<std::size_t>& outcomes, const std::function<double(std::size_t)>& pmf,
                              std::size_t last, double alpha = kDefaultAlpha);

// Homogeneity of two count vectors over the same cells; cells pooled until
// each pooled expected count is at least 5 in both rows.
TestResult chi_square_homogeneity(const std::vector<double>& a, const std::vector<double>& b,
                                  double alpha = kDefaultAlpha);

// P(K <= x) for the Kolmogorov distribution and its upper quantile.
double kolmogorov_cdf(double x);
double kolmogorov_quantile(double p);

// One-sample KS against a continuous cdf with the asymptotic threshold;
// InvalidTest on an empty sample.
TestResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf,
                   double alpha = kDefaultAlpha);
TestResult ks_test(const std::vector<Numeric>& sample, const std::function<double(double)>& cdf,
                   double alpha = kDefaultAlpha);

// Two-sample KS; ties are stepped over together, which keeps the asymptotic
// threshold conservative for laws with atoms.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha = kDefaultAlpha);

// |value - target| <= k * se.
bool within_se(double value, double target, double se, double k = 3.0);

}  // namespace cmaj
