#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/acceptance.hpp"
#include "cmaj/error.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/stats.hpp"
#include "cmaj/verify.hpp"

using namespace cmaj;
using cmaj::test::R;
using cmaj::test::rationals;

TEST_CASE("chi-square accepts the null and rejects a shifted law") {
  RngStream rng(73);
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  std::vector<double> fair(4, 0), skew(4, 0);
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform01();
    fair[u < 0.1 ? 0 : u < 0.3 ? 1 : u < 0.6 ? 2 : 3] += 1;
    const double v = rng.uniform01();
    skew[v < 0.12 ? 0 : v < 0.3 ? 1 : v < 0.6 ? 2 : 3] += 1;
  }
  const auto ok = chi_square_test(fair, p);
  CHECK(ok.pass);
  CHECK(ok.cells == 4);
  CHECK(ok.threshold == doctest::Approx(11.3449).epsilon(1e-4));
  CHECK_FALSE(chi_square_test(skew, p).pass);
}

TEST_CASE("chi-square pools sparse cells and flags strays") {
  const auto r = chi_square_test(std::vector<double>{50, 48, 1, 1}, std::vector<double>{0.5, 0.48, 0.01, 0.01});
  CHECK(r.cells == 2);  // the two sparse tail cells fold into their neighbour
  CHECK_THROWS_AS(chi_square_test(std::vector<double>{10}, std::vector<double>{1.0}), Error);

  std::map<int, std::size_t> obs{{0, 500}, {1, 500}, {7, 1}};
  std::map<int, double> exp{{0, 0.5}, {1, 0.5}};
  CHECK_FALSE(chi_square_test(obs, exp).pass);
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_cdf(1.3580986) == doctest::Approx(0.95).epsilon(1e-5));
  CHECK(kolmogorov_quantile(0.99) == doctest::Approx(1.6276236).epsilon(1e-5));
  CHECK(kolmogorov_cdf(0.0) == 0.0);
}

TEST_CASE("KS tests on Gaussian samples") {
  RngStream rng(79);
  const auto xs = sample_real(IncrementModel::gaussian(), 5000, rng);
  CHECK(ks_test(xs, standard_normal_cdf).pass);
  CHECK_FALSE(ks_test(xs, [](double x) { return standard_normal_cdf(x - 0.15); }).pass);
  const auto ys = sample_real(IncrementModel::gaussian(), 5000, rng);
  CHECK(ks_two_sample(xs, ys).pass);
  CHECK_FALSE(ks_two_sample(xs, sample_real(IncrementModel::gaussian(0.2), 5000, rng)).pass);
  CHECK_THROWS_AS(ks_test(std::vector<double>{}, standard_normal_cdf), Error);
}

TEST_CASE("homogeneity of two count vectors") {
  CHECK(chi_square_homogeneity({100, 200, 300}, {110, 190, 305}).pass);
  CHECK_FALSE(chi_square_homogeneity({100, 200, 300}, {300, 200, 100}).pass);
}

TEST_CASE("total variation against an exact law") {
  std::map<int, std::size_t> counts{{0, 3}, {1, 1}};
  ExactDistribution<int> law{{0, R(1, 2)}, {1, R(1, 2)}};
  CHECK(total_variation(counts, law) == doctest::Approx(0.25));
  counts[2] = 4;
  CHECK(total_variation(counts, law) == doctest::Approx(0.5));
}

TEST_CASE("H and F enumeration") {
  const auto d = enumerate_H_F_distribution(2, IncrementModel::rademacher());
  CHECK(d.H.at(1) == R(1, 4));
  CHECK(d.H.at(2) == R(3, 4));
  CHECK(d.F.at(1) == R(3, 4));
  CHECK(d.F.at(2) == R(1, 4));
  const auto c = enumerate_H_F_distribution(3);  // Rademacher
  CHECK(c.F.at(1) == R(1, 2));
  CHECK(total_mass(c.H) == R(1));
}

TEST_CASE("exchangeable law of a tied input") {
  const auto law = exchangeable_law(rationals({1, 1, -1}));
  CHECK(law.size() == 3);
  for (const auto& [xs, p] : law) CHECK(p == R(1, 3));
}

TEST_CASE("oracle capacity limits") {
  CHECK_THROWS_AS(enumerate_transform_distribution(generic_increments(8)), Error);
  CHECK_THROWS_AS(verify_3214_bijection(generic_increments(9)), Error);
}

TEST_CASE("acceptance suite names") {
  CHECK(acceptance_names().size() == 13);
  CHECK(acceptance_id("transform-exact") == 1);
  CHECK(acceptance_id("bijection-3214") == 13);
  CHECK(acceptance_id("nope") == 0);
  CHECK(acceptance_suite("all").size() == 13);
  CHECK(acceptance_suite("fast").size() == 12);
  CHECK(acceptance_suite("slope-laws") == std::vector<int>{11});
  CHECK_THROWS_AS(acceptance_suite("nope"), Error);
}

TEST_CASE("a single criterion is reproducible") {
  const auto a = run_criterion(acceptance_id("poisson-assembly"), 5);
  const auto b = run_criterion(acceptance_id("poisson-assembly"), 5);
  CHECK(a.pass());
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].statistic == b.checks[i].statistic);
}
