#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "topogrey/groupoid.hpp"
#include "topogrey/laws.hpp"

using namespace topogrey;

TEST_CASE("canned groupoids validate") {
  CHECK(validate_groupoid(FinGroupoid::cyclic_group(2)).ok);
  CHECK(validate_groupoid(FinGroupoid::cyclic_group(4)).ok);
  CHECK(validate_groupoid(FinGroupoid::pair_groupoid(2)).ok);
  CHECK(validate_groupoid(FinGroupoid::pair_groupoid(3)).ok);
  CHECK(validate_groupoid(FinGroupoid::discrete(3)).ok);
  CHECK(validate_groupoid(
            FinGroupoid::disjoint_union(FinGroupoid::cyclic_group(3), FinGroupoid::pair_groupoid(2)))
            .ok);
}

TEST_CASE("validation catches a planted associativity defect") {
  FinGroupoid g = FinGroupoid::cyclic_group(4);
  g.compose[1][1] = 3;  // 1+1 must be 2
  GroupoidVerdict v = validate_groupoid(g);
  CHECK_FALSE(v.ok);
  // Either the endpoint bookkeeping or associativity breaks; a witness names it.
  CHECK_FALSE(v.failed_axiom.empty());
  CHECK_FALSE(v.witness.empty());
}

TEST_CASE("orbits are connected components") {
  FinGroupoid g = FinGroupoid::disjoint_union(FinGroupoid::pair_groupoid(2), FinGroupoid::cyclic_group(2));
  std::vector<int> orb = orbits(g);
  CHECK(orb[0] == orb[1]);
  CHECK(orb[0] != orb[2]);
  CHECK(orbits(FinGroupoid::cyclic_group(2)) == std::vector<int>{0});
}

TEST_CASE("generated subgroupoids") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  Subgroupoid all = generated_subgroupoid(z4, {1});
  CHECK(all.morphisms == std::vector<int>{0, 1, 2, 3});
  Subgroupoid even = generated_subgroupoid(z4, {2});
  CHECK(even.morphisms == std::vector<int>{0, 2});
  CHECK(generated_subgroupoid(z4, {}).morphisms.empty());
  Subgroupoid units = generated_subgroupoid(z4, {0});
  CHECK(units.morphisms == std::vector<int>{0});
  CHECK(is_subgroupoid(z4, even.morphisms));
  CHECK_FALSE(is_subgroupoid(z4, {0, 1}));
}

TEST_CASE("action groupoids") {
  // The trivial action of Z/2 on one point returns the group itself.
  FinGroupoid z2 = FinGroupoid::cyclic_group(2);
  GroupoidAction trivial{{"pt"}, {0}, {{0}, {0}}};
  FinGroupoid back = action_groupoid(z2, trivial);
  CHECK(back.size() == 2);
  CHECK(back.object_count() == 1);
  // Z/2 acting on {0,1} by swap: 4 morphisms, one orbit.
  GroupoidAction swap{{"p0", "p1"}, {0, 0}, {{0, 1}, {1, 0}}};
  FinGroupoid act = action_groupoid(z2, swap);
  CHECK(act.size() == 4);
  CHECK(orbits(act) == std::vector<int>{0, 0});
  // The identity-only groupoid acting on anything gives a discrete groupoid.
  FinGroupoid one = FinGroupoid::cyclic_group(1);
  GroupoidAction idact{{"a", "b"}, {0, 0}, {{0, 1}}};
  FinGroupoid disc = action_groupoid(one, idact);
  CHECK(disc.size() == 2);
  for (size_t m = 0; m < disc.size(); ++m) CHECK(disc.is_unit(static_cast<int>(m)));
  // Broken action axioms are rejected: s*(s*p0) = p0 but (s*s)*p0 = p1 here.
  GroupoidAction broken{{"p0", "p1"}, {0, 0}, {{0, 1}, {1, 1}}};
  CHECK_FALSE(validate_action(z2, broken).ok);
  CHECK_THROWS_AS(action_groupoid(z2, broken), Error);
}

TEST_CASE("coset spaces") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  {
    Subgroupoid u = generated_subgroupoid(z4, {2});
    CosetSpace cs = coset_space(z4, u);
    REQUIRE(cs.classes.size() == 2);
    CHECK(cs.classes[0] == std::vector<int>{0, 2});
    CHECK(cs.classes[1] == std::vector<int>{1, 3});
    CHECK(cs.unit_class[0] == 0);
    CHECK(cs.left_act[1][0] == 1);  // 1 * {0,2} = {1,3}
  }
  {
    Subgroupoid whole = generated_subgroupoid(z4, {1});
    CosetSpace cs = coset_space(z4, whole);
    CHECK(cs.classes.size() == 1);
  }
  {
    Subgroupoid units = generated_subgroupoid(z4, {0});
    CosetSpace cs = coset_space(z4, units);
    CHECK(cs.classes.size() == 4);  // singletons
    for (const auto& cls : cs.classes) CHECK(cls.size() == 1);
  }
}

TEST_CASE("right multiplication maps") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  Subgroupoid u = generated_subgroupoid(z4, {2});
  Subgroupoid v = generated_subgroupoid(z4, {1});  // the whole group
  // S = V with U <= V: the canonical projection G/U -> G/V.
  RightMultResult proj = right_mult_map(z4, u, v, v.morphisms);
  REQUIRE(proj.ok);
  CHECK(proj.map == std::vector<int>{0, 0});
  // U = V = units, S = {g}: right translation on sigma-fibers.
  Subgroupoid units = generated_subgroupoid(z4, {0});
  RightMultResult trans = right_mult_map(z4, units, units, {1});
  REQUIRE(trans.ok);
  CosetSpace singl = coset_space(z4, units);
  for (size_t c = 0; c < singl.classes.size(); ++c) {
    int g = singl.classes[c][0];
    CHECK(singl.classes[static_cast<size_t>(trans.map[c])][0] == z4.mul(g, 1));
  }
  // A planted coverage failure: U = Z/4 is not inside S*S^-1 for S = {0}.
  Subgroupoid whole = generated_subgroupoid(z4, {1});
  RightMultResult bad = right_mult_map(z4, whole, units, {0});
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed_precondition == "coverage");
  CHECK_FALSE(bad.witness.empty());
  // A planted smallness failure.
  RightMultResult notsmall = right_mult_map(z4, units, units, {0, 1});
  CHECK_FALSE(notsmall.ok);
  CHECK(notsmall.failed_precondition == "small");
}

TEST_CASE("random groupoids validate") {
  Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    FinGroupoid g = random_groupoid(rng, 12);
    CHECK(g.size() <= 12);
    CHECK(validate_groupoid(g).ok);
  }
}
