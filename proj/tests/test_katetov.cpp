#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "topogrey/katetov.hpp"
#include "topogrey/laws.hpp"

using namespace topogrey;

namespace {

Rational01 R(std::int64_t n, std::int64_t d) { return Rational01(n, d); }

FinMetricSpace two_point(Rational01 d) {
  return FinMetricSpace::from_pairs({"a", "b"}, {{0, 1, d}});
}

FinMetricSpace three_point(Rational01 ab, Rational01 ac, Rational01 bc) {
  return FinMetricSpace::from_pairs({"a", "b", "c"}, {{0, 1, ab}, {0, 2, ac}, {1, 2, bc}});
}

}  // namespace

TEST_CASE("katetov inequality verdicts") {
  FinMetricSpace x = two_point(R(1, 2));
  CHECK(is_katetov(x, {R(1, 4), R(1, 4)}).ok);
  KatetovVerdict v = is_katetov(x, {Rational01::zero(), R(1, 4)});
  CHECK_FALSE(v.ok);
  CHECK(v.failed_inequality == "sum");
  CHECK(v.witness == std::pair<int, int>{0, 1});
  // delta(x) is Katetov for every point of every space.
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    FinMetricSpace z = random_metric_space(rng, 5, 6);
    for (size_t p = 0; p < z.size(); ++p) CHECK(is_katetov(z, delta_embed(z, static_cast<int>(p))).ok);
  }
}

TEST_CASE("katetov distance realizes the enriched Yoneda identity") {
  FinMetricSpace x = two_point(R(1, 2));
  std::vector<Rational01> u{R(1, 4), R(1, 4)};
  CHECK(katetov_distance(u, u).is_zero());
  CHECK(katetov_distance(delta_embed(x, 0), delta_embed(x, 1)) == R(1, 2));
  CHECK(katetov_distance(delta_embed(x, 0), u) == u[0]);
}

TEST_CASE("support extension") {
  FinMetricSpace z = three_point(R(1, 4), R(1, 2), R(1, 2));
  std::vector<Rational01> u{R(1, 4)};
  std::vector<Rational01> ext = extend_support(z, {0}, u);
  CHECK(ext == std::vector<Rational01>{R(1, 4), R(1, 2), R(3, 4)});
  // Restriction back to the support is the identity; full support is a no-op.
  std::vector<int> full{0, 1, 2};
  CHECK(extend_support(z, full, ext) == ext);
  // Yoneda consistency: extending delta over a subset gives delta again.
  std::vector<Rational01> da = delta_embed(z, 0);
  std::vector<Rational01> restricted{da[0], da[1]};
  CHECK(extend_support(z, {0, 1}, restricted) == da);
}

TEST_CASE("katetov map functorial behaviour") {
  FinMetricSpace x = two_point(R(1, 2));
  FinMetricSpace y = FinMetricSpace::singleton("y");
  std::vector<Rational01> u{R(1, 4), R(1, 4)};
  CHECK(katetov_map(x, x, {0, 1}, u) == u);
  CHECK(katetov_map(x, y, {0, 0}, u) == std::vector<Rational01>{R(1, 4)});
  // Isometric bijections act by composition with the inverse.
  FinMetricSpace x2(std::vector<std::string>{"b", "a"},
                    {Rational01::zero(), R(1, 2), R(1, 2), Rational01::zero()});
  std::vector<Rational01> v{R(1, 2), Rational01::zero()};
  CHECK(katetov_map(x, x2, {1, 0}, v) == std::vector<Rational01>{Rational01::zero(), R(1, 2)});
  // Expanding distances is not 1-Lipschitz.
  FinMetricSpace far = two_point(Rational01::one());
  CHECK_THROWS_AS(katetov_map(x, far, {0, 1}, u), Error);
}

TEST_CASE("one point extensions") {
  FinMetricSpace x = two_point(R(1, 2));
  OnePointExtension eq = one_point_extension(x, {R(1, 2), R(1, 2)}, "p");
  CHECK_FALSE(eq.already_realized);
  CHECK(eq.space.size() == 3);
  CHECK(eq.space.d(2, 0) == R(1, 2));
  OnePointExtension realized = one_point_extension(x, delta_embed(x, 1), "p");
  CHECK(realized.already_realized);
  CHECK(realized.realizing_point == 1);
  FinMetricSpace pt = FinMetricSpace::singleton("z");
  OnePointExtension tiny = one_point_extension(pt, {R(1, 3)}, "w");
  CHECK(tiny.space.size() == 2);
  CHECK(tiny.space.d(0, 1) == R(1, 3));
  CHECK_THROWS_AS(one_point_extension(x, {Rational01::zero(), R(1, 4)}, "p"), Error);
}

TEST_CASE("enumerate_katetov") {
  FinMetricSpace empty(std::vector<std::string>{}, std::vector<Rational01>{});
  CHECK(enumerate_katetov(empty, 2).size() == 1);
  FinMetricSpace pt = FinMetricSpace::singleton("x");
  CHECK(enumerate_katetov(pt, 2).size() == 3);
  FinMetricSpace x = two_point(R(1, 2));
  auto fns = enumerate_katetov(x, 2);
  // Brute force over all 9 value pairs.
  size_t brute = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      if (is_katetov(x, {R(a, 2), R(b, 2)}).ok) ++brute;
  CHECK(fns.size() == brute);
  CHECK(fns.size() == 6);
  CHECK_THROWS_AS(enumerate_katetov(two_point(R(1, 3)), 2), Error);
}

TEST_CASE("urysohn towers over a one-point seed") {
  FinMetricSpace seed = FinMetricSpace::singleton("o");
  {
    UrysohnTower t = urysohn_approx(seed, 1, 1, 100);
    CHECK(t.level_sizes == std::vector<size_t>{1, 2});
    CHECK(t.space.d(0, 1) == Rational01::one());
  }
  {
    UrysohnTower t = urysohn_approx(seed, 2, 1, 100);
    CHECK(t.level_sizes == std::vector<size_t>{1, 3});
    // Exactly two new points, at distances 1/2 and 1 from the seed (the empty
    // support is processed first, so the distance-1 point precedes).
    CHECK(rat_min(t.space.d(0, 1), t.space.d(0, 2)) == R(1, 2));
    CHECK(rat_max(t.space.d(0, 1), t.space.d(0, 2)) == Rational01::one());
    CHECK(t.space.d(1, 2) == R(1, 2));
  }
  {
    UrysohnTower t = urysohn_approx(seed, 1, 0, 100);
    CHECK(t.level_sizes == std::vector<size_t>{1});
    CHECK(t.space == seed);
  }
}

TEST_CASE("extension property checks") {
  FinMetricSpace seed = FinMetricSpace::singleton("o");
  UrysohnTower t = urysohn_approx(seed, 1, 1, 100);
  CHECK(extension_property_check(t, 0).ok);
  // A tower reporting more points than it has realizations must fail: remove
  // the realization by shrinking the top level back to the seed.
  UrysohnTower mutilated = t;
  mutilated.space = t.level(0);
  mutilated.level_sizes = {1, 1};
  mutilated.provenance.resize(1);
  ExtensionCheck ec = extension_property_check(mutilated, 0);
  CHECK_FALSE(ec.ok);
  CHECK(ec.witness_values.size() == ec.witness_support.size());
  // The seed alone does not satisfy the property.
  UrysohnTower flat = urysohn_approx(seed, 1, 0, 100);
  CHECK_FALSE(extension_property_check(flat, 0).ok);
}

TEST_CASE("budget exhaustion is flagged") {
  FinMetricSpace seed = FinMetricSpace::singleton("o");
  UrysohnTower t = urysohn_approx(seed, 2, 1, 2);
  CHECK_FALSE(t.complete);
  CHECK(t.space.size() <= 2);
}

TEST_CASE("exact extension stabilizes on realizers") {
  FinMetricSpace seed = FinMetricSpace::singleton("o");
  UrysohnTower t = urysohn_approx(seed, 2, 2, 4096);
  REQUIRE(t.complete);
  std::vector<int> sections(t.space.size());
  std::iota(sections.begin(), sections.end(), 0);
  // Functions over the penultimate level are realized exactly.
  size_t penult = t.level_sizes[1];
  for (size_t a = 0; a < penult; ++a)
    for (size_t b = a + 1; b < penult; ++b) {
      std::vector<int> f{static_cast<int>(a), static_cast<int>(b)};
      for (const auto& u : enumerate_katetov(subspace(t.space, f), 2)) {
        ExactExtensionResult res = exact_extension(t.space, sections, f, u);
        REQUIRE(res.ok);
        for (size_t i = 0; i < f.size(); ++i) CHECK(t.space.d(res.point, f[i]) == u[i]);
      }
    }
  // A function already realized by a late-listed point converges to it.
  std::vector<int> fx{0};
  std::vector<Rational01> ux = delta_embed(t.space, static_cast<int>(t.space.size()) - 1);
  ExactExtensionResult res = exact_extension(t.space, sections, fx, {ux[0]});
  REQUIRE(res.ok);
  CHECK(t.space.d(res.point, 0) == ux[0]);
}

TEST_CASE("tower maps transport construction logs") {
  FinMetricSpace seed = FinMetricSpace::from_pairs({"a", "b"}, {{0, 1, R(1, 2)}});
  FinMetricSpace seed_swapped = FinMetricSpace::from_pairs({"b", "a"}, {{0, 1, R(1, 2)}});
  UrysohnTower tx = urysohn_approx(seed, 2, 1, 512);
  UrysohnTower ty = urysohn_approx(seed_swapped, 2, 1, 512);
  TowerMap tm = tower_map(tx, ty, {1, 0});
  CHECK(tm.unique);
  REQUIRE(tm.level_maps.size() == 2);
  // The commuting square with the inclusions: level maps are prefixes.
  for (size_t i = 0; i < tm.level_maps[0].size(); ++i)
    CHECK(tm.level_maps[0][i] == tm.level_maps[1][i]);
  // Identity seed map gives the identity on every level.
  TowerMap idm = tower_map(tx, tx, {0, 1});
  for (const auto& lvl : idm.level_maps)
    for (size_t i = 0; i < lvl.size(); ++i) CHECK(lvl[i] == static_cast<int>(i));
  // Cross-check against the isometry search.
  CHECK(find_isometry(tx.space, ty.space).has_value());
  CHECK_THROWS_AS(tower_map(tx, urysohn_approx(seed, 1, 1, 512), {0, 1}), Error);
}

TEST_CASE("tower determinism is bit-exact") {
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    FinMetricSpace seed = random_metric_space(rng, 2, 2);
    UrysohnTower a = urysohn_approx(seed, 2, 2, 2048);
    UrysohnTower b = urysohn_approx(seed, 2, 2, 2048);
    CHECK(a.space == b.space);
    CHECK(a.level_sizes == b.level_sizes);
  }
}

TEST_CASE("katetov law suite stays green") {
  SuiteOptions opts;
  opts.seed = 9;
  opts.count = 25;
  Report rep = check_laws("katetov", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}
