#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "topogrey/io.hpp"
#include "topogrey/laws.hpp"

using namespace topogrey;

TEST_CASE("rationals serialize as num/den strings") {
  CHECK(rat_to_json(Rational01(1, 3)) == json("1/3"));
  CHECK(rat_from_json(json("2/6")) == Rational01(1, 3));
  CHECK_THROWS_AS(rat_from_json(json(0.5)), Error);
  CHECK_THROWS_AS(rat_from_json(json("3/2")), Error);
}

TEST_CASE("grey set and relation round trips") {
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    Carrier c = make_carrier("p", rng.range(1, 5));
    GreySet a = random_grey_set(rng, c, 8);
    CHECK(grey_set_from_json(grey_set_to_json(a)) == a);
    Carrier d = make_carrier("q", rng.range(1, 4));
    GreyRelation r = random_grey_relation(rng, c, d, 8);
    CHECK(grey_relation_from_json(grey_relation_to_json(r)) == r);
  }
}

TEST_CASE("metric spaces round trip and reject bad tables") {
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    FinMetricSpace x = random_metric_space(rng, 6, 8);
    CHECK(metric_from_json(metric_to_json(x)) == x);
  }
  json bad = {{"points", {"a", "b"}},
              {"dist", {{"0/1", "1/2"}, {"1/3", "0/1"}}}};
  CHECK_THROWS_AS(metric_from_json(bad), Error);  // asymmetric
}

TEST_CASE("groupoid and norm round trips") {
  Rng rng(10);
  for (int i = 0; i < 25; ++i) {
    FinGroupoid g = random_groupoid(rng, 12);
    FinGroupoid back = groupoid_from_json(groupoid_to_json(g));
    CHECK(back.morphisms == g.morphisms);
    CHECK(back.compose == g.compose);
    CHECK(back.unit == g.unit);
    GreyNorm u = random_norm(g, rng, 4, true);
    CHECK(norm_values_from_json(g, norm_to_json(g, u.values, "g.json")) == u.values);
  }
}

TEST_CASE("tower construction is deterministic down to the serialization bytes") {
  FinMetricSpace seed = FinMetricSpace::from_pairs({"a", "b"}, {{0, 1, Rational01(1, 2)}});
  UrysohnTower a = urysohn_approx(seed, 2, 2, 2048);
  UrysohnTower b = urysohn_approx(seed, 2, 2, 2048);
  CHECK(tower_to_json(a).dump() == tower_to_json(b).dump());
}

TEST_CASE("tower round trip preserves the construction data") {
  FinMetricSpace seed = FinMetricSpace::singleton("o");
  UrysohnTower t = urysohn_approx(seed, 2, 2, 512);
  UrysohnTower back = tower_from_json(tower_to_json(t));
  CHECK(back.space == t.space);
  CHECK(back.level_sizes == t.level_sizes);
  REQUIRE(back.provenance.size() == t.provenance.size());
  for (size_t i = 0; i < t.provenance.size(); ++i) {
    CHECK(back.provenance[i].has_value() == t.provenance[i].has_value());
    if (t.provenance[i]) {
      CHECK(back.provenance[i]->support == t.provenance[i]->support);
      CHECK(back.provenance[i]->values == t.provenance[i]->values);
    }
  }
}

TEST_CASE("family round trip") {
  Rng rng(11);
  for (int i = 0; i < 25; ++i) {
    DiscreteStructureFamily m = random_family(rng, 3, 4);
    DiscreteStructureFamily back = family_from_json(family_to_json(m));
    CHECK(back.base == m.base);
    CHECK(back.sorts == m.sorts);
    CHECK(back.fibers == m.fibers);
    REQUIRE(back.relations.size() == m.relations.size());
    for (size_t r = 0; r < m.relations.size(); ++r) CHECK(back.relations[r].tuples == m.relations[r].tuples);
    REQUIRE(back.functions.size() == m.functions.size());
    for (size_t f = 0; f < m.functions.size(); ++f) CHECK(back.functions[f].graph == m.functions[f].graph);
  }
}
