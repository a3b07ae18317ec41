#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "topogrey/rational.hpp"

using namespace topogrey;

TEST_CASE("truncated addition and subtraction examples") {
  CHECK(Rational01(1, 4).trunc_add(Rational01(1, 4)) == Rational01(1, 2));
  CHECK(Rational01(3, 4).trunc_add(Rational01(3, 4)) == Rational01::one());
  CHECK(Rational01(1, 4).trunc_sub(Rational01(1, 2)) == Rational01::zero());
}

TEST_CASE("normalization and range checks") {
  CHECK(Rational01(2, 4) == Rational01(1, 2));
  CHECK(Rational01(0, 7) == Rational01::zero());
  CHECK(Rational01(9, 9).is_one());
  CHECK_THROWS_AS(Rational01(3, 2), Error);
  CHECK_THROWS_AS(Rational01(-1, 2), Error);
  CHECK_THROWS_AS(Rational01(1, 0), Error);
}

TEST_CASE("parse and print round trip") {
  CHECK(Rational01::parse("1/3").str() == "1/3");
  CHECK(Rational01::parse("0/1") == Rational01::zero());
  CHECK(Rational01::parse("1") == Rational01::one());
  CHECK(Rational01::parse("2/6") == Rational01(1, 3));
  CHECK_THROWS_AS(Rational01::parse("x/y"), Error);
  CHECK_THROWS_AS(Rational01::parse("1/ 2"), Error);
}

TEST_CASE("exhaustive semiring laws over denominators <= 8") {
  std::vector<Rational01> values;
  for (int den = 1; den <= 8; ++den)
    for (int num = 0; num <= den; ++num) values.emplace_back(num, den);
  for (const auto& r : values)
    for (const auto& s : values) {
      CHECK(r.trunc_add(s) == s.trunc_add(r));
      CHECK(r.trunc_add(Rational01::zero()) == r);
      // trunc_sub(trunc_add(r,s), s) <= r with equality when r + s <= 1.
      Rational01 back = r.trunc_add(s).trunc_sub(s);
      CHECK(back <= r);
      if (Rational01::one().trunc_sub(s) >= r) CHECK(back == r);
      for (const auto& t : values) CHECK(r.trunc_add(s).trunc_add(t) == r.trunc_add(s.trunc_add(t)));
    }
}

TEST_CASE("dist, scale and pow2") {
  CHECK(Rational01(1, 3).dist(Rational01(1, 2)) == Rational01(1, 6));
  CHECK(Rational01(1, 2).half() == Rational01(1, 4));
  CHECK(Rational01::pow2(3) == Rational01(1, 8));
  CHECK(Rational01(3, 4).scale(1, 3) == Rational01(1, 4));
}
