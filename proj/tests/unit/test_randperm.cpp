#include <map>

#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/error.hpp"
#include "cmaj/model.hpp"
#include "cmaj/randperm.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/stats.hpp"

using namespace cmaj;
using cmaj::test::R;

TEST_CASE("Stirling numbers of the first kind") {
  CHECK(stirling_first(4, 2) == 11);
  CHECK(stirling_first(5, 1) == 24);
  CHECK(stirling_first(6, 6) == 1);
  CHECK(stirling_first(3, 0) == 0);
  for (unsigned n = 1; n <= 10; ++n) {
    BigInt row = 0;
    for (unsigned k = 0; k <= n; ++k) row += stirling_first(n, k);
    CHECK(row == factorial_int(n));
  }
  CHECK_THROWS_AS(stirling_first(2, 3), Error);
}

TEST_CASE("Ewens partition law") {
  CHECK(ewens_partition_prob(Partition({2, 2})) == R(1, 8));
  CHECK(ewens_partition_prob(Partition({4})) == R(1, 4));
  CHECK(ewens_partition_prob(Partition({1, 1, 1})) == R(1, 6));
  for (std::size_t n = 1; n <= 8; ++n) {
    Rational total = 0, total_theta = 0;
    for (const auto& p : all_partitions(n)) {
      total += ewens_partition_prob(p);
      total_theta += ewens_partition_prob(p, R(1, 3));
    }
    CHECK(total == R(1));
    CHECK(total_theta == R(1));
  }
}

TEST_CASE("Cauchy composition law") {
  CHECK(composition_prob_cauchy(Composition({1, 2, 1})) == R(1, 12));
  CHECK(composition_prob_cauchy(Composition({3})) == R(1, 3));
  for (std::size_t n = 1; n <= 7; ++n) {
    Rational total = 0;
    for (const auto& c : all_compositions(n)) total += composition_prob_cauchy(c);
    CHECK(total == R(1));
  }
}

TEST_CASE("stick-breaking cycle lengths follow Ewens(1)") {
  RngStream rng(23);
  const std::size_t n = 5, draws = 40000;
  std::map<Partition, std::size_t> counts;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto p = sample_cycle_lengths(n, rng);
    CHECK(p.total() == n);
    ++counts[p];
  }
  std::map<Partition, Rational> expected;
  for (const auto& p : all_partitions(n)) expected[p] = ewens_partition_prob(p);
  CHECK(chi_square_test(counts, expected).pass);
}

TEST_CASE("Monte Carlo composition probability brackets the Cauchy value") {
  RngStream rng(31);
  const Composition c({1, 2});
  const auto est = composition_prob_mc(IncrementModel::cauchy(), c, 100000, rng);
  CHECK(within_se(est.value, composition_prob_cauchy(c).get_d(), est.se, 4));
}

TEST_CASE("face composition counts cover every composition") {
  RngStream rng(37);
  const auto counts = face_composition_counts(IncrementModel::cauchy(), 3, 60000, rng);
  std::map<Composition, Rational> expected;
  for (const auto& c : all_compositions(3)) expected[c] = composition_prob_cauchy(c);
  CHECK(chi_square_test(counts, expected).pass);
  CHECK_THROWS_AS(sample_cycle_lengths(0, rng), Error);
}
