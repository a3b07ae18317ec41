#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "topogrey/laws.hpp"
#include "topogrey/metric.hpp"

using namespace topogrey;

namespace {

Rational01 R(std::int64_t n, std::int64_t d) { return Rational01(n, d); }

FinMetricSpace three_point(Rational01 ab, Rational01 ac, Rational01 bc) {
  return FinMetricSpace::from_pairs({"a", "b", "c"}, {{0, 1, ab}, {0, 2, ac}, {1, 2, bc}});
}

size_t count_isometries(const FinMetricSpace& x, const FinMetricSpace& y) {
  if (x.size() != y.size()) return 0;
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  size_t n = 0;
  do {
    bool ok = true;
    for (size_t i = 0; i < x.size() && ok; ++i)
      for (size_t j = 0; j < x.size() && ok; ++j)
        ok = x.d(static_cast<int>(i), static_cast<int>(j)) == y.d(perm[i], perm[j]);
    if (ok) ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n;
}

}  // namespace

TEST_CASE("validation rejects triangle violations") {
  FinMetricSpace bad = three_point(Rational01::one(), R(1, 4), R(1, 4));
  MetricVerdict v = validate_metric(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.failed_axiom == "triangle");
  FinMetricSpace good = three_point(R(1, 4), R(1, 2), R(1, 2));
  CHECK(validate_metric(good).ok);
}

TEST_CASE("sum products") {
  FinMetricSpace two = FinMetricSpace::from_pairs({"a", "b"}, {{0, 1, R(3, 4)}});
  FinMetricSpace prod = sum_product(two, two);
  REQUIRE(prod.size() == 4);
  CHECK(prod.d(0, 1) == R(3, 4));
  CHECK(prod.d(0, 2) == R(3, 4));
  CHECK(prod.d(0, 3) == Rational01::one());  // 3/2 truncates
  FinMetricSpace one = FinMetricSpace::singleton("pt");
  CHECK(find_isometry(sum_product(one, two), two).has_value());
}

TEST_CASE("hausdorff distance") {
  FinMetricSpace z = three_point(R(1, 4), R(1, 2), R(1, 2));
  CHECK(hausdorff_distance(z, {0, 1}, {0, 1}).is_zero());
  CHECK(hausdorff_distance(z, {0}, {1, 2}) == R(1, 2));
  FinMetricSpace two = FinMetricSpace::from_pairs({"a", "b"}, {{0, 1, R(1, 2)}});
  CHECK(hausdorff_distance(two, {0}, {1}) == R(1, 2));
  CHECK_THROWS_AS(hausdorff_distance(z, {}, {0}), Error);
}

TEST_CASE("isometry search on small hand-checked instances") {
  FinMetricSpace x = three_point(R(1, 2), R(1, 2), Rational01::one());
  CHECK(find_isometry(x, x).has_value());
  CHECK(count_isometries(x, x) == 2);  // a fixed, b and c may swap
  FinMetricSpace y = three_point(R(1, 2), R(1, 2), R(1, 2));
  CHECK_FALSE(find_isometry(x, y).has_value());
  CHECK(count_isometries(y, y) == 6);
}

TEST_CASE("seeds constrain the search") {
  FinMetricSpace x = three_point(R(1, 2), R(1, 2), Rational01::one());
  PartialIsometry seed;
  seed.pairs = {{1, 2}};  // send b to c
  auto iso = find_isometry(x, x, seed);
  REQUIRE(iso.has_value());
  bool found = false;
  for (auto [i, j] : iso->pairs)
    if (i == 1) found = j == 2;
  CHECK(found);
  PartialIsometry bad;
  bad.pairs = {{0, 1}};  // a cannot go to b: distance vectors differ
  CHECK_FALSE(find_isometry(x, x, bad).has_value());
  PartialIsometry broken;
  broken.pairs = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(find_isometry(x, x, broken), Error);
}

TEST_CASE("search agrees with brute force on random spaces") {
  Rng rng(2024);
  int positives = 0;
  for (int i = 0; i < 220; ++i) {
    FinMetricSpace x = random_metric_space(rng, 6, 5);
    FinMetricSpace y;
    if (rng.chance(1, 2)) {
      std::vector<int> perm(x.size());
      std::iota(perm.begin(), perm.end(), 0);
      for (size_t k = perm.size(); k > 1; --k) std::swap(perm[k - 1], perm[static_cast<size_t>(rng.below(k))]);
      std::vector<Rational01> table(x.size() * x.size());
      for (size_t a = 0; a < x.size(); ++a)
        for (size_t b = 0; b < x.size(); ++b)
          table[static_cast<size_t>(perm[a]) * x.size() + static_cast<size_t>(perm[b])] =
              x.d(static_cast<int>(a), static_cast<int>(b));
      y = FinMetricSpace(make_carrier("q", static_cast<int>(x.size())), std::move(table));
    } else {
      y = random_metric_space(rng, 6, 5);
    }
    bool brute = count_isometries(x, y) > 0;
    auto fast = find_isometry(x, y);
    CHECK(fast.has_value() == brute);
    if (brute) ++positives;
    CHECK(find_isometry(y, x).has_value() == brute);
  }
  CHECK(positives > 50);  // the generator must exercise the positive branch
}

TEST_CASE("finmetric law suite stays green") {
  SuiteOptions opts;
  opts.seed = 5;
  opts.count = 40;
  Report rep = check_laws("finmetric", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}
