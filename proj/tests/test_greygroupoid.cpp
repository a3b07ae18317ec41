#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "topogrey/greygroupoid.hpp"
#include "topogrey/laws.hpp"

using namespace topogrey;

namespace {

Rational01 R(std::int64_t n, std::int64_t d) { return Rational01(n, d); }

GreyMorphismSet values(std::initializer_list<Rational01> v) { return GreyMorphismSet(v); }

}  // namespace

TEST_CASE("grey convolution on Z/2") {
  FinGroupoid z2 = FinGroupoid::cyclic_group(2);
  GreyMorphismSet a = values({Rational01::zero(), R(1, 4)});
  GreyMorphismSet b = values({R(1, 4), R(1, 2)});
  GreyMorphismSet ab = grey_conv(z2, a, b);
  CHECK(ab[0] == R(1, 4));
  CHECK(ab[1] == R(1, 2));
  // The unit indicator is a two-sided identity.
  GreyMorphismSet id = grey_indicator(z2, {0});
  CHECK(grey_conv(z2, a, id) == a);
  CHECK(grey_conv(z2, id, a) == a);
  CHECK(grey_inv(z2, grey_conv(z2, a, b)) == grey_conv(z2, grey_inv(z2, b), grey_inv(z2, a)));
}

TEST_CASE("grey norm axioms") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  CHECK(grey_norm_check(z4, values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()})).ok);
  // Asymmetric tables fail.
  GreyNormVerdict v = grey_norm_check(z4, values({Rational01::zero(), R(1, 4), R(1, 2), Rational01::one()}));
  CHECK_FALSE(v.ok);
  CHECK(v.failed_axiom == "symmetric");
  // Grey unit values fail strict unitality.
  GreyNormVerdict w = grey_norm_check(z4, values({R(1, 2), Rational01::one(), Rational01::one(), Rational01::one()}));
  CHECK_FALSE(w.ok);
  CHECK(w.failed_axiom == "unital-crisp");
  // Submultiplicativity failure: 2 = 1+1 cheap while 2 itself is expensive.
  GreyNormVerdict s = grey_norm_check(z4, values({Rational01::zero(), R(1, 8), Rational01::one(), R(1, 8)}));
  CHECK_FALSE(s.ok);
  CHECK(s.failed_axiom == "submultiplicative");
}

TEST_CASE("grey closure is a min-plus shortest path") {
  FinGroupoid z2 = FinGroupoid::cyclic_group(2);
  GreyMorphismSet a = values({Rational01::zero(), R(3, 10)});
  CHECK(grey_closure(z2, a).values == a);  // s*s*s is longer than s
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  GreyMorphismSet b = values({Rational01::zero(), R(3, 10), Rational01::one(), Rational01::one()});
  GreyNorm cl = grey_closure(z4, b);
  CHECK(cl.values == values({Rational01::zero(), R(3, 10), R(3, 5), R(3, 10)}));
  // Closure is a fixpoint on norms.
  CHECK(grey_closure(z4, cl.values).values == cl.values);
  // Non strictly unital inputs are rejected.
  CHECK_THROWS_AS(grey_closure(z4, values({R(1, 2), R(1, 4), R(1, 4), R(1, 4)})), Error);
}

TEST_CASE("norm to metric and back") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  GreyNorm u(z4, values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()}));
  LeftInvariantMetric d = norm_to_metric(z4, u);
  REQUIRE(d.domain.size() == 4);
  CHECK(d.rel.at(1, 3) == R(1, 2));  // d(1,3) = U(2)
  CHECK(d.rel.at(0, 2) == R(1, 2));
  CHECK(d.rel.at(0, 1) == Rational01::one());
  CHECK(is_left_invariant(z4, d));
  CHECK(metric_to_norm(z4, u.unit_objects(z4), d).values == u.values);
  // Crisp case: cosets of a subgroupoid at mutual distance 0.
  GreyNorm crisp = GreyNorm::crisp(z4, generated_subgroupoid(z4, {2}));
  LeftInvariantMetric dc = norm_to_metric(z4, crisp);
  CHECK(dc.rel.at(0, 2).is_zero());
  CHECK(dc.rel.at(0, 1).is_one());
}

TEST_CASE("filtration checks and synthesis") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  // A worked filtration: G >= {0,2} >= {0}.
  Filtration f{{{0, 1, 2, 3}, {0, 2}, {0}}};
  CHECK(filtration_check(z4, f).ok);
  Filtration bad{{{0}, {0, 2}}};
  CHECK_FALSE(filtration_check(z4, bad).ok);
  Filtration triple{{{0, 2}, {0, 1, 3}}};  // not descending and triple fails
  CHECK_FALSE(filtration_check(z4, triple).ok);
  // Greedy synthesis from a target: thresholds are 1, 1/4, 1/8 per level.
  GreyMorphismSet target = values({Rational01::zero(), Rational01::one(), R(1, 8), Rational01::one()});
  Filtration syn = synthesize_filtration(z4, target, {0}, 2);
  REQUIRE(syn.levels.size() == 3);
  CHECK(syn.levels[0] == std::vector<int>{0, 2});  // U < 1
  CHECK(syn.levels[1] == std::vector<int>{0, 2});  // U < 1/4 keeps 2, triple closes
  CHECK(syn.levels[2] == std::vector<int>{0});     // U < 1/8 drops 2
  // Discrete groupoid: all levels are the units.
  FinGroupoid disc = FinGroupoid::discrete(2);
  GreyMorphismSet dt = values({Rational01::zero(), Rational01::zero()});
  Filtration dsyn = synthesize_filtration(disc, dt, {0, 1}, 2);
  for (const auto& lvl : dsyn.levels) CHECK(lvl == std::vector<int>{0, 1});
  // Depth 0 still yields a single-level filtration.
  CHECK(synthesize_filtration(z4, target, {0}, 0).levels.size() == 1);
}

TEST_CASE("birkhoff-kakutani synthesis on the worked example") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  Filtration f{{{0, 1, 2, 3}, {0, 2}, {0}}};
  BirkhoffResult bk = birkhoff_kakutani(z4, f, nullptr);
  CHECK(bk.vprime == values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()}));
  CHECK(bk.w.values == values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()}));
  CHECK(bk.cert.is_norm);
  CHECK(bk.cert.unit_set_ok);
  CHECK(bk.cert.chaining_ok);
  CHECK(bk.w.values[2] >= R(1, 4));
  // Constant-units filtration gives the discrete norm.
  Filtration units{{{0}, {0}}};
  BirkhoffResult ubk = birkhoff_kakutani(z4, units, nullptr);
  CHECK(ubk.w.values == values({Rational01::zero(), Rational01::one(), Rational01::one(), Rational01::one()}));
}

TEST_CASE("coset metric spaces") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  GreyNorm u(z4, values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()}));
  CosetMetricSpace cms = coset_metric_space(z4, u);
  REQUIRE(cms.space.size() == 4);  // singleton classes
  CHECK(cms.space.d(cms.class_of[0], cms.class_of[2]) == R(1, 2));
  CHECK(cms.space.d(cms.class_of[1], cms.class_of[3]) == R(1, 2));
  CHECK(cms.space.d(cms.class_of[0], cms.class_of[1]) == Rational01::one());
  // The indiscrete norm collapses a group to one point.
  GreyNorm zero(z4, values({Rational01::zero(), Rational01::zero(), Rational01::zero(), Rational01::zero()}));
  CHECK(coset_metric_space(z4, zero).space.size() == 1);
}

TEST_CASE("sandwich bounds for the unit section") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  GreyNorm v(z4, values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()}));
  GreyNorm u = v;
  // S = the unit section: R(pi g, pi h) = d_V(g, h), sandwich tight.
  SandwichResult res = right_mult_grey_relation(z4, u, v, {0}, R(1, 4));
  REQUIRE(res.ok);
  CHECK(res.invariant_ok);
  CHECK(res.sandwich_ok);
  CosetMetricSpace cv = coset_metric_space(z4, v);
  for (size_t g = 0; g < 4; ++g)
    for (size_t h = 0; h < 4; ++h)
      CHECK(res.table[static_cast<size_t>(cv.class_of[g]) * cv.space.size() +
                      static_cast<size_t>(cv.class_of[h])] ==
            v.at(z4.mul(z4.inv(static_cast<int>(g)), static_cast<int>(h))));
  // A planted non-small section is rejected with a witness.
  SandwichResult bad = right_mult_grey_relation(z4, u, v, {0, 2}, R(1, 4));
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed_precondition == "small");
}

TEST_CASE("metric canonical structure on the Z/4 example") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  Subgroupoid units{{0}};
  GreyNorm u0 = GreyNorm::crisp(z4, units);
  GreyNorm n(z4, values({Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()}));
  std::vector<GreyNorm> norms = close_under_sum(z4, {u0, n});
  CHECK(norms.size() == 2);  // n + n = u0, already closed
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& nm : norms) sections.push_back(default_metric_sections(z4, nm));
  MetricCanonicalStructure mc = metric_canonical_structure(z4, norms, sections);
  MetricYonedaReport rep = metric_yoneda_check(mc);
  CHECK(rep.ok);
  CHECK(rep.separating_violations.empty());
  REQUIRE(rep.hom_counts.size() == 1);
  CHECK(std::get<3>(rep.hom_counts[0]) == 4);
  // A family violating the separating condition is reported.
  GreyNorm indiscrete(z4, values({Rational01::zero(), Rational01::zero(), Rational01::zero(),
                                  Rational01::zero()}));
  std::vector<GreyNorm> weak = close_under_sum(z4, {indiscrete});
  std::vector<std::vector<std::vector<int>>> wsec;
  for (const auto& nm : weak) wsec.push_back(default_metric_sections(z4, nm));
  MetricYonedaReport wrep = metric_yoneda_check(metric_canonical_structure(z4, weak, wsec));
  CHECK_FALSE(wrep.separating_violations.empty());
}

TEST_CASE("eps-homomorphism counts extend the exact ones monotonically") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  Subgroupoid units{{0}};
  GreyNorm u0 = GreyNorm::crisp(z4, units);
  GreyNorm n(z4, {Rational01::zero(), Rational01::one(), R(1, 2), Rational01::one()});
  std::vector<GreyNorm> norms = close_under_sum(z4, {u0, n});
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& nm : norms) sections.push_back(default_metric_sections(z4, nm));
  MetricCanonicalStructure mc = metric_canonical_structure(z4, norms, sections);
  size_t exact = enumerate_metric_homs(mc, 0, 0).size();
  CHECK(count_metric_eps_homs(mc, 0, 0, Rational01::zero()) == exact);
  CHECK(count_metric_eps_homs(mc, 0, 0, R(1, 4)) >= exact);
  CHECK(count_metric_eps_homs(mc, 0, 0, Rational01::one()) >= count_metric_eps_homs(mc, 0, 0, R(1, 4)));
}

TEST_CASE("birkhoff law suite stays green") {
  SuiteOptions opts;
  opts.seed = 21;
  opts.count = 30;
  Report rep = check_laws("birkhoff", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}

TEST_CASE("planted convolution mutation yields a small witness") {
  SuiteOptions opts;
  opts.seed = 21;
  opts.count = 4;
  opts.plant_mutation = true;
  Report rep = check_laws("birkhoff", opts);
  bool conv_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "conv-laws") {
      conv_failed = !c.pass;
      REQUIRE(c.details.contains("counterexample"));
      auto w = c.details["counterexample"]["witness"];
      CHECK(w.contains("morphism"));
    }
  CHECK(conv_failed);
}

TEST_CASE("sandwich law suite stays green") {
  SuiteOptions opts;
  opts.seed = 77;
  opts.count = 20;
  Report rep = check_laws("sandwich", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}

TEST_CASE("crisp degeneration suite stays green") {
  SuiteOptions opts;
  opts.seed = 13;
  opts.count = 30;
  Report rep = check_laws("crisp-degeneration", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}

TEST_CASE("metric yoneda suite stays green") {
  SuiteOptions opts;
  opts.seed = 3;
  opts.count = 12;
  Report rep = check_laws("metric-yoneda", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}
