#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/poisson_faces.hpp"
#include "cmaj/randperm.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/stats.hpp"

using namespace cmaj;
using cmaj::test::R;

namespace {

double poisson_pmf(double mean, std::size_t k) {
  return std::exp(-mean + static_cast<double>(k) * std::log(mean) - std::lgamma(static_cast<double>(k) + 1));
}

}  // namespace

TEST_CASE("face counts are independent Poisson(q^j / j)") {
  RngStream rng(41);
  const double q = 0.6;
  const std::size_t draws = 40000;
  std::vector<std::size_t> a1, a2, total;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto c = sample_face_counts(q, rng);
    a1.push_back(c.count(1) ? c.at(1) : 0);
    a2.push_back(c.count(2) ? c.at(2) : 0);
    std::size_t f = 0;
    for (const auto& [j, k] : c) f += k;
    total.push_back(f);
  }
  CHECK(chi_square_integer(a1, [&](std::size_t k) { return poisson_pmf(q, k); }, 4).pass);
  CHECK(chi_square_integer(a2, [&](std::size_t k) { return poisson_pmf(q * q / 2, k); }, 3).pass);
  const double mF = -std::log(1 - q);
  CHECK(chi_square_integer(total, [&](std::size_t k) { return poisson_pmf(mF, k); }, 6).pass);
  CHECK_THROWS_AS(sample_face_counts(1.0, rng), Error);
}

TEST_CASE("assembled walk has the sampled faces") {
  RngStream rng(43);
  for (int rep = 0; rep < 300; ++rep) {
    const auto proc = sample_face_point_process(0.8, IncrementModel::gaussian(), rng, true);
    const auto w = assemble_walk_from_faces(proc);
    CHECK(w.size() == proc.total_length());
    if (w.size() == 0) continue;
    const auto m = concave_majorant(w);
    std::vector<std::size_t> got, want;
    for (const auto& f : m.faces) got.push_back(f.length);
    for (const auto& p : proc.points) want.push_back(p.length);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);
    CHECK(m.H() == m.F());
  }
}

TEST_CASE("lattice models are redirected") {
  RngStream rng(1);
  try {
    (void)sample_face_point_process(0.5, IncrementModel::rademacher(), rng, false);
    FAIL("expected UseLatticeModule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UseLatticeModule);
  }
  auto proc = sample_face_point_process(0.9, IncrementModel::gaussian(), rng, false);
  while (proc.points.empty()) proc = sample_face_point_process(0.9, IncrementModel::gaussian(), rng, false);
  CHECK_THROWS_AS(assemble_walk_from_faces(proc), Error);
}

TEST_CASE("exceedance probabilities") {
  CHECK(prob_sum_exceeds(IncrementModel::gaussian(), 1, -1.0) == doctest::Approx(0.8413447461).epsilon(1e-9));
  CHECK(prob_sum_exceeds(IncrementModel::gaussian(-1.0), 3, -1.0) == doctest::Approx(0.5));
  CHECK(prob_sum_exceeds(IncrementModel::cauchy(), 5, 0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(prob_sum_exceeds(IncrementModel::gaussian(), 0, 0.0), Error);
}

TEST_CASE("infinite-horizon face counts") {
  RngStream rng(47);
  const auto model = IncrementModel::gaussian(-1.0);
  const std::size_t draws = 20000;
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < draws; ++i) {
    std::size_t c = 0;
    for (const auto& f : sample_infinite_majorant(model, -1.0, 4, rng)) {
      CHECK(f.length <= 4);
      c += f.length == 1;
    }
    ones.push_back(c);
  }
  CHECK(chi_square_integer(ones, [](std::size_t k) { return poisson_pmf(0.5, k); }, 4).pass);
  CHECK_THROWS_AS(sample_infinite_majorant(model, -2.0, 4, rng), Error);
}

TEST_CASE("Hunt right-hand side") {
  CHECK(hunt_rhs(IncrementModel::gaussian(), 4).to_double() == doctest::Approx(1.110838).epsilon(1e-6));
  const auto rad = hunt_rhs(IncrementModel::rademacher(), 2);
  REQUIRE(rad.is_exact());
  CHECK(rad.to_rational() == R(3, 4));

  RngStream rng(53);
  const auto est = mean_maximum_mc(IncrementModel::gaussian(), 4, 200000, rng);
  CHECK(within_se(est.value, 1.110838, est.se, 4));
}

TEST_CASE("P(M = 0) under a geometric horizon") {
  RngStream rng(59);
  const double q = 0.7;
  const std::size_t draws = 40000;
  std::size_t zero = 0;
  for (std::size_t i = 0; i < draws; ++i)
    zero += spitzer_compound_poisson_sample(q, IncrementModel::gaussian(), rng) == 0;
  const double p = std::sqrt(1 - q);
  const double se = std::sqrt(p * (1 - p) / draws);
  CHECK(within_se(static_cast<double>(zero) / draws, p, se, 4));
}

TEST_CASE("walk summary") {
  const auto s = summarize_walk(build_walk(std::vector<double>{1, -0.5, 2, -3}));
  CHECK(s.n == 4);
  CHECK(s.M == 2.5);
  CHECK(s.L == 3);
  CHECK(s.S == -0.5);
  CHECK(s.positive_faces + s.nonpositive_faces == s.F);
}

TEST_CASE("constant positive probability") {
  CHECK(constant_positive_probability(IncrementModel::gaussian()) == R(1, 2));
  CHECK(constant_positive_probability(IncrementModel::cauchy()) == R(1, 2));
  CHECK_FALSE(constant_positive_probability(IncrementModel::gaussian(0.3)).has_value());
}
