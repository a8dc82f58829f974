#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/transform.hpp"
#include "cmaj/verify.hpp"

using namespace cmaj;
using cmaj::test::R;
using cmaj::test::rationals;
using cmaj::test::rwalk;

TEST_CASE("valid cyclic shifts") {
  CHECK(valid_cyclic_shifts(rationals({3, -1, -2})) == std::vector<std::size_t>{1});
  CHECK(valid_cyclic_shifts(rationals({1, -1, 1, -1})) == std::vector<std::size_t>{1, 3});
  CHECK(valid_cyclic_shifts(rationals({4})) == std::vector<std::size_t>{0});
  CHECK(rotate_block(rationals({3, -1, -2}), 1) == rationals({-1, -2, 3}));
}

TEST_CASE("generic blocks have exactly one valid shift") {
  for (std::size_t n = 1; n <= 7; ++n) CHECK(valid_cyclic_shifts(generic_increments(n)).size() == 1);
}

TEST_CASE("theorem1 output structure") {
  RngStream rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const auto x = generic_increments(1 + rep % 9);
    const auto r = theorem1_transform(x, rng);
    auto sorted_in = x, sorted_out = r.walk.increments;
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    CHECK(sorted_in == sorted_out);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(r.walk.increments[i] == x[r.permutation[i]]);
    CHECK(Partition::of(r.segments) == r.cycle_lengths);
    CHECK(r.faces == r.segments);
    CHECK(r.excursions.refines(r.faces));
    CHECK(r.majorant == concave_majorant(r.walk));
  }
}

TEST_CASE("theorem1 with ties keeps segments inside faces") {
  RngStream rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const auto r = theorem1_transform(rationals({1, -1, 1, -1, 2, 0}), rng);
    CHECK(r.segments.refines(r.faces));
    CHECK(r.excursions.refines(r.faces));
  }
}

TEST_CASE("exact transform law is exchangeable") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto x = generic_increments(n);
    const auto law = enumerate_transform_distribution(x);
    CHECK(total_mass(law) == R(1));
    CHECK(law == exchangeable_law(x));
  }
  const auto tied = rationals({1, 1, -1});
  CHECK(enumerate_transform_distribution(tied) == exchangeable_law(tied));
}

TEST_CASE("3214 worked examples") {
  const auto f = path_transform_3214(rwalk({2, -3, 1}), 2);
  CHECK(f.k == 2);
  CHECK(f.walk.increments == rationals({1, -3, 2}));

  const auto g = invert_3214(2, f.walk);
  CHECK(g.U == 2);
  CHECK(g.walk.values == rationals({0, 2, -1, 0}));
}

TEST_CASE("3214 round trip on generic walks") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto w = build_walk(generic_increments(n));
    for (std::size_t U = 1; U <= n; ++U) {
      const auto f = path_transform_3214(w, U);
      CHECK(f.k >= 1);
      CHECK(f.k <= n);
      const auto g = invert_3214(f.k, f.walk);
      CHECK(g.U == U);
      CHECK(g.walk == w);
    }
  }
}

TEST_CASE("3214 round trip on Gaussian walks") {
  RngStream rng(19);
  for (int rep = 0; rep < 10000; ++rep) {
    const auto w = build_walk(sample_real(IncrementModel::gaussian(), 20, rng));
    for (std::size_t U = 1; U <= 20; ++U) {
      const auto f = path_transform_3214(w, U);
      const auto g = invert_3214(f.k, f.walk);
      REQUIRE(g.U == U);
      REQUIRE(g.walk == w);
    }
  }
}

TEST_CASE("3214 argument checks") {
  const auto w = rwalk({2, -3, 1});
  CHECK_THROWS_AS(path_transform_3214(w, 0), Error);
  CHECK_THROWS_AS(path_transform_3214(w, 4), Error);
  CHECK_THROWS_AS(invert_3214(0, w), Error);
}

TEST_CASE("3214 is a bijection for small n") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto rep = verify_3214_bijection(generic_increments(n));
    CHECK(rep.bijective);
    CHECK(rep.round_trip_failures == 0);
    CHECK(rep.distinct_images == rep.pairs);
  }
}
