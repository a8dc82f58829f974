#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"

using namespace cmaj;
using cmaj::test::R;
using cmaj::test::rationals;
using cmaj::test::rwalk;

TEST_CASE("two-face majorant") {
  const auto m = concave_majorant(rwalk({1, -2, 3}));
  REQUIRE(m.F() == 2);
  CHECK(m.faces[0].length == 1);
  CHECK(m.faces[0].increment == R(1));
  CHECK(m.faces[1].length == 2);
  CHECK(m.faces[1].increment == R(1));
  CHECK(m.touch_times == std::vector<std::size_t>{0, 1, 3});
  CHECK(m.H() == 2);
  CHECK(m.face_composition() == Composition({1, 2}));
}

TEST_CASE("colinear touches stay inside one face") {
  const auto m = concave_majorant(rwalk({-1, 1, -1, 1}));
  REQUIRE(m.F() == 1);
  CHECK(m.faces[0].increment == R(0));
  CHECK(m.touch_times == std::vector<std::size_t>{0, 2, 4});
  CHECK(m.H() == 2);
  CHECK(m.excursion_composition() == Composition({2, 2}));
}

TEST_CASE("single step and empty walks") {
  const auto m = concave_majorant(rwalk({5}));
  CHECK(m.F() == 1);
  CHECK(m.H() == 1);
  CHECK_THROWS_AS(concave_majorant(build_walk(std::vector<Rational>{})), Error);
}

TEST_CASE("slopes strictly decrease and faces tile the walk") {
  RngStream rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const auto w = build_walk(sample_real(IncrementModel::gaussian(), 1 + rng.uniform_index(40), rng));
    const auto m = concave_majorant(w);
    std::size_t len = 0;
    for (std::size_t i = 0; i < m.F(); ++i) {
      len += m.faces[i].length;
      if (i > 0) CHECK(steeper(m.faces[i - 1], m.faces[i]));
    }
    CHECK(len == w.size());
  }
}

TEST_CASE("sweep agrees with the chord oracle") {
  RngStream rng(9);
  const auto lattice = IncrementModel::parse("finite:-2@1/4,-1@1/4,0@1/4,1@1/4");
  for (int rep = 0; rep < 300; ++rep) {
    const auto n = 1 + rng.uniform_index(25);
    const auto wr = build_walk(sample_exact(lattice, n, rng));
    CHECK(concave_majorant(wr).touch_times == brute_force_touch_times(wr));
    const auto wd = build_walk(sample_real(IncrementModel::cauchy(), n, rng));
    CHECK(concave_majorant(wd).touch_times == brute_force_touch_times(wd));
  }
}

TEST_CASE("excursion decomposition") {
  const auto d = excursion_decomposition(rwalk({1, -2, 3}));
  CHECK(d.blocks == Composition({1, 2}));
  REQUIRE(d.excursions.size() == 2);
  CHECK(d.excursions[1].values == rationals({0, -2, 1}));
  CHECK(d.face_of == std::vector<std::size_t>{0, 1});
  CHECK(d.slopes[1] == R(1, 2));
}

TEST_CASE("maximum identity on the majorant") {
  const auto a = argmax_decomposition(rwalk({2, -1, 3, -5, 1}));
  CHECK(a.L == 3);
  CHECK(a.M == R(4));
  CHECK(a.identity_holds);

  reset_identity_audit();
  RngStream rng(2);
  for (int rep = 0; rep < 500; ++rep) {
    const auto w = build_walk(sample_real(IncrementModel::gaussian(-0.2), 30, rng));
    CHECK(audit_max_identity(w, concave_majorant(w)));
  }
  CHECK(identity_audit().checked == 500);
  CHECK(identity_audit().violations == 0);
}
