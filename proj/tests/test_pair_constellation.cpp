#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gaplab/pair_constellation.hpp"

using namespace gaplab;

TEST_CASE("pair singular series hand values") {
  CHECK(pair_singular_series(2) == 1);
  CHECK(pair_singular_series(6) == 2);
  CHECK(pair_singular_series(15) == Rat(8, 3));
  CHECK(pair_singular_series(1) == 1);
  CHECK(pair_singular_series(105) == Rat(16, 5));  // 3*5*7
  CHECK(pair_singular_series(1024) == 1);          // power of two
  CHECK_THROWS_AS(pair_singular_series(0), std::invalid_argument);
}

TEST_CASE("pair singular series stays below the loglog envelope") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    u64 h = 100 + rng() % 1'000'000;
    CAPTURE(h);
    CHECK(to_double(pair_singular_series(h)) <=
          2.1 * std::log(std::log(static_cast<double>(h))));
  }
}

TEST_CASE("pair_count hand values") {
  CHECK(pair_count(10, 2) == 2);  // (11,13), (17,19)
  CHECK(pair_count(10, 1) == 0);
  CHECK(pair_count(10, 6) == 3);  // (11,17), (13,19), (17,23)
  CHECK_THROWS_AS(pair_count(10, 0), std::invalid_argument);
  CHECK_THROWS_AS(pair_count(10, 21), std::invalid_argument);
}

TEST_CASE("pair_count matches the serial reference") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 8; ++i) {
    u64 X = 50 + rng() % 5000;
    u64 h = 1 + rng() % 40;
    CAPTURE(X);
    CAPTURE(h);
    CHECK(pair_count(X, h) == ref::pair_count(X, h));
  }
}

TEST_CASE("offset tuple validation and admissibility") {
  CHECK_THROWS_AS(OffsetTuple({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(OffsetTuple({0, 4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(OffsetTuple({}), std::invalid_argument);

  CHECK(OffsetTuple({0}).admissible());
  CHECK(OffsetTuple({0, 2}).admissible());
  CHECK(OffsetTuple({0, 2, 6}).admissible());
  CHECK_FALSE(OffsetTuple({0, 2, 4}).admissible());  // covers residues mod 3
  CHECK(OffsetTuple({0, 4, 6, 10}).admissible());
  CHECK_FALSE(OffsetTuple({0, 1}).admissible());  // covers residues mod 2
}

TEST_CASE("constellation_count hand values") {
  CHECK(constellation_count(10, OffsetTuple({0, 2})) == 2);
  CHECK(constellation_count(10, OffsetTuple({0, 2, 6})) == 2);  // 11,17
  for (u64 X : {10ull, 50ull, 500ull, 5000ull})
    CHECK(constellation_count(X, OffsetTuple({0, 2, 4})) == 0);
}

TEST_CASE("constellation at offsets (0,h) equals pair_count") {
  for (u64 X : {10ull, 777ull, 4000ull})
    for (u64 h : {2ull, 6ull, 12ull})
      CHECK(constellation_count(X, OffsetTuple({0, h})) == pair_count(X, h));
}

TEST_CASE("inadmissible tuples only catch the obstructing prime itself") {
  OffsetTuple t({0, 2, 4});  // only 3,5,7
  for (u64 X : {3ull, 10ull, 100ull, 1000ull})
    CHECK(constellation_count(X, t) <= t.order() + 1);
  CHECK(constellation_count(3, t) == 1);  // n=3: 3,5,7
}

TEST_CASE("constellation_count matches the serial reference") {
  CHECK(constellation_count(500, OffsetTuple({0, 2, 6})) ==
        ref::constellation_count(500, OffsetTuple({0, 2, 6})));
  CHECK(constellation_count(911, OffsetTuple({0, 6, 12})) ==
        ref::constellation_count(911, OffsetTuple({0, 6, 12})));
}

TEST_CASE("singular series values") {
  SingularSeriesValue twin = singular_series(OffsetTuple({0, 2}));
  CHECK(twin.value == doctest::Approx(1.3203236).epsilon(1e-6));
  CHECK(twin.tail_bound < 1e-6);
  CHECK(twin.cutoff == kSingularSeriesCutoff);

  CHECK(singular_series(OffsetTuple({0, 2, 4})).value == 0.0);
  CHECK(singular_series(OffsetTuple({0})).value == doctest::Approx(1.0));
  CHECK(singular_series(OffsetTuple({0})).tail_bound == 0.0);

  // same for any even pair offset: value is F(h) * twin constant
  SingularSeriesValue six = singular_series(OffsetTuple({0, 6}));
  CHECK(six.value == doctest::Approx(2 * 1.3203236).epsilon(1e-5));
}

TEST_CASE("singular series is shift- and reflection-invariant") {
  // residue counts only depend on pairwise differences
  OffsetTuple base({0, 2, 6});
  OffsetTuple shifted({0, 4, 6});   // reflection of (0,2,6)
  SingularSeriesValue a = singular_series(base);
  SingularSeriesValue b = singular_series(shifted);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));

  OffsetTuple c({0, 4, 10});  // (0,2,6)+... same difference multiset as (0,6,10)?
  SingularSeriesValue r1 = singular_series(OffsetTuple({0, 6, 10}));
  SingularSeriesValue r2 = singular_series(c);
  CHECK(r2.value == doctest::Approx(r1.value).epsilon(1e-12));
}

TEST_CASE("pair counts at 10^6 against the independent oracle") {
  PrimalityMap pm(1'000'000, 2'000'006);
  CHECK(pair_count(pm, 1'000'000, 2) == 6702);
  CHECK(pair_count(pm, 1'000'000, 6) == 13'033);
}

TEST_CASE("pair constant estimate") {
  // primes 23,29,31,37 shifted by 26 all land on composites
  CHECK(pair_constant_estimate(20, 26) == 0.0);
  double c2 = pair_constant_estimate(1'000'000, 2);
  double c6 = pair_constant_estimate(1'000'000, 6);
  CHECK(c2 == doctest::Approx(1.2792).epsilon(1e-4));
  CHECK(c6 == doctest::Approx(1.243793).epsilon(1e-4));
  CHECK(c6 / c2 > 0.5);  // the F(h) normalization lines the offsets up
  CHECK(c6 / c2 < 2.0);
  CHECK_THROWS_AS(pair_constant_estimate(1000, 3), std::invalid_argument);
}
