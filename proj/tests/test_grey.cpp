#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "topogrey/grey.hpp"
#include "topogrey/laws.hpp"
#include "topogrey/metric.hpp"

using namespace topogrey;

namespace {
Rational01 R(std::int64_t n, std::int64_t d) { return Rational01(n, d); }
}  // namespace

TEST_CASE("pointwise operations") {
  Carrier c{"x"};
  GreySet zero = GreySet::constant(c, Rational01::zero());
  GreySet b(c, {R(1, 2)});
  CHECK(grey_union(zero, b) == zero);  // 0 is bottom in the reversed order
  GreySet a(c, {R(1, 4)});
  CHECK(grey_add(a, b).of("x") == R(3, 4));
  CHECK(shift_sub(a, R(1, 2)).of("x") == Rational01::zero());
  Carrier other{"y"};
  CHECK_THROWS_AS(grey_union(a, GreySet::constant(other, Rational01::zero())), Error);
}

TEST_CASE("sublevels recover ordinary subsets") {
  Carrier c{"a", "b", "c"};
  GreySet s = GreySet::zero_indicator(c, {"a", "c"});
  CHECK(sublevel(s, Rational01::one(), true) == std::vector<std::string>{"a", "c"});
  GreySet h(c, {R(1, 2), R(1, 2), R(1, 2)});
  CHECK(sublevel(h, R(1, 2), true).empty());
  CHECK(sublevel(h, R(1, 2), false) == c);
}

TEST_CASE("map images and preimages") {
  Carrier x{"a", "b"};
  Carrier y{"y", "yprime"};
  PointMap f(x, y, {0, 0});
  GreySet a(x, {R(1, 4), R(1, 2)});
  GreySet img = map_image(f, a);
  CHECK(img.of("y") == R(1, 4));          // fiberwise minimum
  CHECK(img.of("yprime") == Rational01::one());  // empty fiber
  PointMap id = PointMap::identity(x);
  CHECK(map_image(id, a) == a);
  CHECK(map_preimage(f, img).of("b") == R(1, 4));
}

TEST_CASE("relational image") {
  Carrier x{"a", "b"};
  Carrier y{"y"};
  GreyRelation r(x, y, {R(1, 5), R(3, 5)});
  GreySet a(x, {R(3, 10), R(1, 10)});
  CHECK(rel_image(r, a).of("y") == R(1, 2));  // min(1/2, 7/10)
  CHECK(rel_image(GreyRelation::diagonal(x), a) == a);
  GreySet top = GreySet::constant(x, Rational01::one());
  CHECK(rel_image(r, top) == GreySet::constant(y, Rational01::one()));
}

TEST_CASE("relational composition") {
  Carrier c{"a", "b"};
  GreyRelation r = GreyRelation::diagonal(c);
  r.at(0, 1) = R(1, 4);
  r.at(1, 0) = R(1, 4);
  GreyRelation s = GreyRelation::diagonal(c);
  s.at(0, 1) = R(1, 2);
  s.at(1, 0) = R(1, 2);
  CHECK(rel_compose(GreyRelation::diagonal(c), r) == r);
  CHECK(rel_compose(r, GreyRelation::diagonal(c)) == r);
  // Brute force over the two middle points: min(R(a,a)+S(a,b), R(a,b)+S(b,b))
  // = min(1/2, 1/4) = 1/4.
  GreyRelation sr = rel_compose(s, r);
  CHECK(sr.at(0, 1) == R(1, 4));
  CHECK(rel_inverse(sr) == rel_compose(rel_inverse(r), rel_inverse(s)));
  Carrier other{"z"};
  CHECK_THROWS_AS(rel_compose(GreyRelation::diagonal(other), r), Error);
}

TEST_CASE("composing a pseudometric with itself refines it") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Carrier c = make_carrier("p", rng.range(1, 5));
    Pseudometric d = random_pseudometric(rng, c, 8);
    GreyRelation dd = rel_compose(d.rel, d.rel);
    for (size_t a = 0; a < c.size(); ++a)
      for (size_t b = 0; b < c.size(); ++b)
        CHECK(dd.at(static_cast<int>(a), static_cast<int>(b)) >= d.rel.at(static_cast<int>(a), static_cast<int>(b)));
  }
}

TEST_CASE("pseudometric check verdicts") {
  Carrier c{"a", "b", "c"};
  CHECK(pseudometric_check(GreyRelation::diagonal(c)).ok);
  CHECK(pseudometric_check(GreyRelation::constant(c, c, Rational01::zero())).ok);
  GreyRelation bad = GreyRelation::diagonal(c);
  bad.at(0, 1) = Rational01::one();
  bad.at(1, 0) = Rational01::one();
  bad.at(0, 2) = R(1, 4);
  bad.at(2, 0) = R(1, 4);
  bad.at(1, 2) = R(1, 4);
  bad.at(2, 1) = R(1, 4);
  PseudometricVerdict v = pseudometric_check(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.failed_axiom == "triangle");
  CHECK(v.witness == std::vector<std::string>{"a", "c", "b"});
}

TEST_CASE("saturation") {
  Carrier whole{"a", "b"};
  GreyRelation rel = GreyRelation::diagonal(whole);
  rel.at(0, 1) = R(1, 3);
  rel.at(1, 0) = R(1, 3);
  Pseudometric d(rel);
  GreySet all = GreySet::zero_indicator(whole, {"a", "b"});
  CHECK(saturate(d, all) == GreySet::constant(whole, Rational01::zero()));
  GreySet just_a = GreySet::zero_indicator(whole, {"a"});
  CHECK(saturate(d, just_a).of("b") == R(1, 3));
  GreySet sat = saturate(d, just_a);
  CHECK(saturate(d, sat) == sat);
}

TEST_CASE("metric quotients") {
  Carrier c{"a", "b", "c"};
  {
    Pseudometric d(GreyRelation::diagonal(c));
    MetricQuotient q = metric_quotient(d);
    CHECK(q.space.size() == 3);
  }
  {
    Pseudometric d(GreyRelation::constant(c, c, Rational01::zero()));
    MetricQuotient q = metric_quotient(d);
    CHECK(q.space.size() == 1);
  }
  {
    GreyRelation rel = GreyRelation::constant(c, c, Rational01::zero());
    rel.at(0, 2) = R(1, 2);
    rel.at(2, 0) = R(1, 2);
    rel.at(1, 2) = R(1, 2);
    rel.at(2, 1) = R(1, 2);
    Pseudometric d(rel);
    MetricQuotient q = metric_quotient(d);
    REQUIRE(q.space.size() == 2);
    CHECK(q.class_of[0] == q.class_of[1]);
    CHECK(q.space.d(0, 1) == R(1, 2));
  }
}

TEST_CASE("grey-algebra law suite stays green") {
  SuiteOptions opts;
  opts.seed = 42;
  opts.count = 60;
  Report rep = check_laws("grey-algebra", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}

TEST_CASE("planted compose mutation is caught and shrunk") {
  SuiteOptions opts;
  opts.seed = 42;
  opts.count = 5;
  opts.plant_mutation = true;
  Report rep = check_laws("grey-algebra", opts);
  bool assoc_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "compose-associativity") {
      assoc_failed = !c.pass;
      REQUIRE(c.details.contains("counterexample"));
      auto witness = c.details["counterexample"]["witness"];
      // Shrinking drives the carriers down to single points.
      CHECK(witness["R"]["source"].size() == 1);
      CHECK(witness["T"]["target"].size() == 1);
    }
  CHECK(assoc_failed);
}
