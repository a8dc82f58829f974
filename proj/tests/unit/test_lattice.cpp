#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/lattice.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/stats.hpp"
#include "cmaj/verify.hpp"

using namespace cmaj;
using cmaj::test::R;
using cmaj::test::rationals;

namespace {

const IncrementModel& lazy() {
  static const auto m = IncrementModel::parse("finite:-1@1/4,0@1/4,1@1/2");
  return m;
}

Majorant<Rational> faces_of(std::initializer_list<std::pair<std::size_t, std::int64_t>> fs) {
  std::vector<std::pair<std::size_t, Rational>> v;
  for (const auto& [len, inc] : fs) v.emplace_back(len, R(inc));
  return majorant_from_faces(v);
}

}  // namespace

TEST_CASE("point masses of sums") {
  const auto t = point_mass_table(IncrementModel::rademacher(), 6);
  CHECK(t.mass(4, R(0)) == R(3, 8));
  CHECK(t.mass(3, R(1)) == R(3, 8));
  CHECK(t.mass(3, R(0)) == R(0));
  CHECK_THROWS_AS(point_mass_table(IncrementModel::gaussian(), 3), Error);
  CHECK_THROWS_AS(point_mass_table(IncrementModel::rademacher(), kMaxPointMassOrder + 1), Error);
}

TEST_CASE("mu series at slope zero") {
  const auto mu = mu_series(IncrementModel::rademacher(), R(0), 6);
  CHECK(mu[1] == R(0));
  CHECK(mu[2] == R(1, 4));
  CHECK(mu[3] == R(0));
  CHECK(mu[4] == R(3, 32));
  CHECK(mu[6] == R(5, 96));
}

TEST_CASE("slope index orders by denominator") {
  const auto idx = slope_index(point_mass_table(IncrementModel::rademacher(), 3));
  REQUIRE(idx.size() >= 3);
  CHECK(idx[0].get_den() == 1);
  for (std::size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1].get_den() <= idx[i].get_den());
}

TEST_CASE("generating functions for Rademacher") {
  const auto g = gf_HKF(IncrementModel::rademacher(), 6, 6);
  CHECK(g.K.coeff(4, 2) == R(11, 24));
  CHECK(g.H.coeff(2, 1) == R(1, 4));
  CHECK(g.H.coeff(2, 2) == R(3, 4));
  CHECK(g.F.coeff(2, 1) == R(3, 4));
  CHECK(g.F.coeff(2, 2) == R(1, 4));
  for (std::size_t n = 0; n <= 6; ++n) {
    Rational h = 0, f = 0;
    for (std::size_t m = 0; m <= 6; ++m) {
      h += g.H.coeff(n, m);
      f += g.F.coeff(n, m);
    }
    CHECK(h == R(1));
    CHECK(f == R(1));
  }
}

TEST_CASE("generating functions agree with path enumeration") {
  for (const auto& model : {IncrementModel::rademacher(), lazy(), IncrementModel::bernoulli(R(1, 3))}) {
    const auto g = gf_HKF(model, 7, 7);
    for (std::size_t n = 1; n <= 7; ++n) {
      const auto d = enumerate_H_F_distribution(n, model);
      for (std::size_t m = 0; m <= 7; ++m) {
        const Rational h = d.H.count(m) ? d.H.at(m) : Rational(0);
        const Rational f = d.F.count(m) ? d.F.at(m) : Rational(0);
        CHECK(g.H.coeff(n, m) == h);
        CHECK(g.F.coeff(n, m) == f);
      }
    }
  }
}

TEST_CASE("continuous models share one generating function") {
  const auto g = gf_HKF(IncrementModel::gaussian(), 5, 5);
  CHECK(g.H == g.K);
  CHECK(g.F == g.K);
}

TEST_CASE("per-slope laws are consistent") {
  const double q = 0.6;
  const auto L = face_slope_laws(q, IncrementModel::rademacher(), R(0));
  const double mu = 0.36 / 4 + 3 * std::pow(q, 4) / 32 + 5 * std::pow(q, 6) / 96;
  CHECK(L.mu == doctest::Approx(mu).epsilon(1e-3));
  CHECK(L.no_face_probability == doctest::Approx(std::exp(-L.mu)));
  CHECK(L.bernoulli == doctest::Approx(1 - std::exp(-L.mu)));
  const double seg = std::accumulate(L.segment_length.begin(), L.segment_length.end(), 0.0);
  const double exc = std::accumulate(L.excursion_length.begin(), L.excursion_length.end(), 0.0);
  CHECK(seg == doctest::Approx(1).epsilon(1e-9));
  CHECK(exc == doctest::Approx(1).epsilon(1e-9));
  CHECK(series_order_for(0.5) >= 40);
}

TEST_CASE("nested compositions nest and have geometric total length") {
  RngStream rng(61);
  const double q = 0.5;
  NestedCompositionSampler sample(q, IncrementModel::rademacher());
  std::vector<std::size_t> totals;
  for (int i = 0; i < 30000; ++i) {
    const auto c = sample(rng);
    CHECK(c.excursions.refines(c.segments));
    CHECK(c.segments.refines(c.faces_composition));
    totals.push_back(c.excursions.total());
  }
  CHECK(chi_square_integer(totals, [&](std::size_t n) { return (1 - q) * std::pow(q, n); }, 12).pass);
}

TEST_CASE("corrected composition weights on a flat face") {
  const auto flat = faces_of({{4, 0}});
  const auto& rad = IncrementModel::rademacher();
  const auto w4 = conditional_composition_weight(flat, Composition({4}), rad);
  const auto w22 = conditional_composition_weight(flat, Composition({2, 2}), rad);
  CHECK(w4 == R(3, 32));
  CHECK(w22 == R(1, 32));
  CHECK(w4 + w22 == R(1, 8));
  const auto law = conditional_composition_law(flat, rad);
  REQUIRE(law.size() == 2);
  CHECK(law.at(Composition({4})) == R(3, 4));
  CHECK(law.at(Composition({2, 2})) == R(1, 4));
}

TEST_CASE("segment composition law is normalised") {
  for (const auto& maj : {faces_of({{2, 2}, {4, 0}}), faces_of({{3, 1}, {3, -1}}), faces_of({{6, 0}})}) {
    for (const auto& model : {IncrementModel::rademacher(), lazy()}) {
      Rational total = 0;
      for (const auto& [c, p] : conditional_composition_law(maj, model)) {
        CHECK(c.refines(maj.face_composition()));
        total += p;
      }
      CHECK(total == R(1));
    }
  }
  CHECK_THROWS_AS(conditional_composition_law(faces_of({{2, 1}}), IncrementModel::rademacher()), Error);
}

TEST_CASE("conditioned walks follow the exhaustive conditional law") {
  RngStream rng(83);
  for (const auto& maj : {faces_of({{6, 0}}), faces_of({{3, 1}, {3, -1}})}) {
    for (const auto& model : {IncrementModel::rademacher(), lazy()}) {
      const auto law = exhaustive_conditional_law(maj, model);
      ConditionedWalkSampler sample(maj, model);
      std::map<std::vector<Rational>, std::size_t> counts;
      for (int i = 0; i < 20000; ++i) ++counts[sample(rng).increments];
      if (law.size() == 1)
        CHECK(counts.size() == 1);  // a single admissible path
      else
        CHECK(chi_square_test(counts, law).pass);
    }
  }
}

TEST_CASE("conditioned sampler reproduces the majorant") {
  RngStream rng(67);
  const auto maj = faces_of({{2, 2}, {4, 0}, {2, -2}});
  ConditionedWalkSampler sample(maj, lazy());
  for (int i = 0; i < 500; ++i) {
    const auto m = concave_majorant(sample(rng));
    CHECK(m.faces == maj.faces);
  }
}

TEST_CASE("conditioned trivial walks") {
  RngStream rng(71);
  const auto w = conditioned_trivial_walk(IncrementModel::rademacher(), 2, rng);
  CHECK(w.increments == rationals({-1, 1}));
  try {
    (void)conditioned_trivial_walk(IncrementModel::rademacher(), 3, rng);
    FAIL("expected NoMass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoMass);
  }
}
