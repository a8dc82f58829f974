#include <set>

#include "doctest.h"
#include "helpers.hpp"

#include "cmaj/composition.hpp"
#include "cmaj/error.hpp"
#include "cmaj/model.hpp"
#include "cmaj/numeric.hpp"
#include "cmaj/parallel.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/series.hpp"
#include "cmaj/verify.hpp"
#include "cmaj/walk.hpp"

using namespace cmaj;
using cmaj::test::R;
using cmaj::test::rationals;

TEST_CASE("build_walk accumulates partial sums") {
  const auto w = build_walk(rationals({1, -2, 3}));
  CHECK(w.values == rationals({0, 1, -1, 2}));
  CHECK(w.size() == 3);

  const auto d = build_walk(std::vector<double>{0.5, -0.25});
  CHECK(d.values == std::vector<double>{0, 0.5, 0.25});
}

TEST_CASE("mixed numeric walks are rejected") {
  CHECK_THROWS_AS(build_walk(std::vector<Numeric>{Numeric(0.5), Numeric(R(1, 3))}), Error);
  const auto path = build_walk(std::vector<Numeric>{Numeric(R(1, 3)), Numeric(R(-1))});
  CHECK(walk_size(path) == 2);
  CHECK(values_of(path).back() == Numeric(R(-2, 3)));
}

TEST_CASE("binary64 sums that would round are refused") {
  try {
    (void)checked_add(1.0, 0x1.0p-60);
    FAIL("expected InexactArithmetic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InexactArithmetic);
  }
  CHECK(checked_add(0.5, 0.25) == 0.75);
}

TEST_CASE("assumption A on subset means") {
  CHECK(check_assumption_a(generic_increments(6)));
  CHECK_FALSE(check_assumption_a(rationals({1, -1, 1, -1})));
  CHECK_FALSE(check_assumption_a(rationals({2, 0, 1})));  // {2,0} and {1} share mean 1
}

TEST_CASE("exact orientation and slope comparison") {
  CHECK(orientation<Rational>(0, R(0), 1, R(1), 2, R(2)) == 0);
  CHECK(orientation<Rational>(0, R(0), 1, R(2), 2, R(2)) < 0);
  CHECK(orientation<double>(0, 0.0, 1, 0.0, 2, 1.0) > 0);
  CHECK(compare_ratio<Rational>(R(1), 3, R(2), 6) == 0);
  CHECK(compare_ratio<double>(1.0, 2, 1.0, 3) > 0);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == R(1, 2));
  CHECK(parse_rational("-0.25") == R(-1, 4));
  CHECK(parse_rational("7") == R(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK(rational_from_double(0.375) == R(3, 8));
  CHECK(factorial(5) == R(120));
}

TEST_CASE("models parse from short specs") {
  const auto b = IncrementModel::parse("bernoulli:1/3");
  REQUIRE(b.atomic());
  CHECK(b.atoms().size() == 2);
  CHECK(b.exact_mean() == R(-1, 3));  // atoms -1 and +1

  const auto f = IncrementModel::parse("finite:-1@1/4,0@1/4,1@1/2");
  CHECK(f.exact_mean() == R(1, 4));
  CHECK_FALSE(f.symmetric());
  CHECK(IncrementModel::rademacher().symmetric());
  CHECK(IncrementModel::parse("gaussian").continuous());
  CHECK_FALSE(IncrementModel::parse("cauchy").mean().has_value());

  CHECK_THROWS_AS(IncrementModel::parse("nosuch"), Error);
  CHECK_THROWS_AS(IncrementModel::parse("bernoulli:2"), Error);
  CHECK_THROWS_AS(IncrementModel::parse("finite:1@1/2,2@1/3"), Error);
}

TEST_CASE("continuous samples sit on the dyadic grid") {
  RngStream rng(7);
  for (double x : sample_real(IncrementModel::gaussian(), 1000, rng)) {
    CHECK(x == std::ldexp(std::round(std::ldexp(x, 32)), -32));
    CHECK(std::abs(x) <= kSampleCap);
  }
}

TEST_CASE("rng streams are reproducible and forks differ") {
  RngStream a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  RngStream root(42);
  auto f1 = root.fork("x");
  auto f2 = root.fork("x");
  CHECK(f1.key() != f2.key());
  RngStream other(42);
  CHECK(other.fork("x").key() == f1.key());
  RngStream u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform01();
    CHECK((x >= 0 && x < 1));
    CHECK(u.uniform_index(5) < 5);
  }
}

TEST_CASE("chunked Monte Carlo does not depend on the worker count") {
  auto run = [](unsigned workers) {
    set_worker_count(workers);
    RngStream rng(11);
    auto parts = run_chunked(1000, rng, [](std::size_t count, RngStream& r, std::size_t) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < count; ++i) s += r.uniform_index(1000);
      return s;
    });
    std::uint64_t total = 0;
    for (auto p : parts) total += p;
    return total;
  };
  const auto one = run(1);
  CHECK(run(3) == one);
  set_worker_count(1);
}

TEST_CASE("compositions and partitions") {
  const auto c = Composition::from_boundaries({0, 1, 3});
  CHECK(c.blocks() == std::vector<std::size_t>{1, 2});
  CHECK(c.boundaries() == std::vector<std::size_t>{0, 1, 3});
  CHECK(Composition({1, 1, 2}).refines(Composition({2, 2})));
  CHECK_FALSE(Composition({1, 2, 1}).refines(Composition({2, 2})));
  CHECK(all_compositions(5).size() == 16);
  CHECK(all_partitions(5).size() == 7);
  CHECK(Partition({1, 3, 1}).parts() == std::vector<std::size_t>{3, 1, 1});
  CHECK_THROWS_AS(Composition({1, 0}), Error);
}

TEST_CASE("power series arithmetic") {
  const auto L = UnivariateSeries::minus_log_one_minus(5);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(L[k] == R(1, static_cast<std::int64_t>(k)));
  // exp(-log(1-s)) = 1/(1-s)
  const auto E = L.exp();
  for (std::size_t k = 0; k <= 5; ++k) CHECK(E[k] == R(1));
  CHECK(E.log() == L);
  const auto one = E * E.reciprocal();
  CHECK(one[0] == R(1));
  for (std::size_t k = 1; k <= 5; ++k) CHECK(one[k] == R(0));
}

TEST_CASE("bivariate exp(t g) has Poisson rows") {
  const auto B = BivariateSeries::exp_t_times(UnivariateSeries::minus_log_one_minus(4), 4);
  // (1-s)^{-t}: [s^2 t^1] = 1/2, [s^2 t^2] = 1/2
  CHECK(B.coeff(2, 1) == R(1, 2));
  CHECK(B.coeff(2, 2) == R(1, 2));
  CHECK(B.coeff(0, 0) == R(1));
}
