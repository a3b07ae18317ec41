#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "topogrey/metric.hpp"

namespace topogrey {

/// Verdict for the two Katetov inequalities over a base space.
struct KatetovVerdict {
  bool ok = false;
  std::string failed_inequality;  // "lipschitz" / "sum"
  std::pair<int, int> witness{-1, -1};
};

/// u is a Katetov function on `base` iff |u(x)-u(y)| <= d(x,y) and
/// u(x)+u(y) >= d(x,y) for all x, y.
KatetovVerdict is_katetov(const FinMetricSpace& base, const std::vector<Rational01>& u);

/// Sup-norm distance between two functions over the same base.
Rational01 katetov_distance(const std::vector<Rational01>& u, const std::vector<Rational01>& v);

/// delta(x) = d(x, -), the canonical isometric embedding into E(X).
std::vector<Rational01> delta_embed(const FinMetricSpace& base, int x);

/// E(F <= Z): extends u over the subset F (indices into Z) to all of Z via
/// ext(z) = min_{x in F} (d(z,x) +. u(x)); empty F gives the constant 1.
std::vector<Rational01> extend_support(const FinMetricSpace& z, const std::vector<int>& support,
                                       const std::vector<Rational01>& u);

/// E(f): grey image of u under a (checked) 1-Lipschitz map f followed by
/// d_Y-saturation.  f is given by target indices per source point.
std::vector<Rational01> katetov_map(const FinMetricSpace& x, const FinMetricSpace& y,
                                    const std::vector<int>& f, const std::vector<Rational01>& u);

struct OnePointExtension {
  FinMetricSpace space;
  bool already_realized = false;
  int realizing_point = -1;  // existing point when already_realized, else the new one
};

/// X adjoined with a fresh point at distances u; flags (and skips the
/// extension) when some existing point already realizes u.
OnePointExtension one_point_extension(const FinMetricSpace& x, const std::vector<Rational01>& u,
                                      const std::string& new_name);

/// All Katetov functions F -> {0, 1/q, ..., 1}, in lexicographic order.
/// Requires every distance of F to have denominator dividing q.
std::vector<std::vector<Rational01>> enumerate_katetov(const FinMetricSpace& f, std::int64_t q);

/// Provenance of a tower point: the Katetov function (over a support in the
/// creation level) the point realizes.
struct TowerPointLog {
  int level = 0;                  // the level whose subsets the support indexes
  std::vector<int> support;       // indices into that level
  std::vector<Rational01> values; // u on the support
};

/// Finite truncation of the Katetov tower E'^n(X).  Levels are nested point
/// prefixes of one ambient space; inclusions are the identity on indices.
struct UrysohnTower {
  FinMetricSpace space;            // the top level
  std::vector<size_t> level_sizes; // prefix length per level, depth+1 entries
  std::vector<std::optional<TowerPointLog>> provenance;  // per point; seed points empty
  std::int64_t q = 1;
  int depth = 0;
  size_t budget = 0;
  bool complete = true;  // false when the budget cut construction short

  FinMetricSpace level(int n) const;
  int depth_built() const { return static_cast<int>(level_sizes.size()) - 1; }
};

/// Builds the tower: level n+1 adjoins, for each subset F of level n (smallest
/// supports first, lexicographic within a size, sizes capped by max_support)
/// and each enumerated u over F unrealized in level n, one realizing point.
UrysohnTower urysohn_approx(const FinMetricSpace& seed, std::int64_t q, int depth, size_t budget,
                            size_t max_support = SIZE_MAX);

struct ExtensionCheck {
  bool ok = false;
  std::vector<int> witness_support;
  std::vector<Rational01> witness_values;
};

/// Checks that every enumerated Katetov function over every subset of level n
/// (support size capped) is realized exactly by some point of level n+1.
ExtensionCheck extension_property_check(const UrysohnTower& tower, int n,
                                        size_t max_support = SIZE_MAX);

struct ExactExtensionResult {
  bool ok = false;
  int point = -1;
  int stages = 0;
  Rational01 failed_tolerance;  // set when the approximate property ran out
};

/// Iterates the approximate-realizer refinement until it stabilizes on an
/// exact realizer of u over F: at stage n the first listed point within
/// 2^-(n+1) of the auxiliary function v is chosen.  Exact rationals make the
/// sequence stabilize once the tolerance drops below the least positive
/// discrepancy.
ExactExtensionResult exact_extension(const FinMetricSpace& x, const std::vector<int>& sections,
                                     const std::vector<int>& support,
                                     const std::vector<Rational01>& u);

/// Level-wise isometries between towers over isometric seeds, computed by
/// transporting construction logs.  seed_map[i] is the Y-seed index matched
/// to X-seed index i.
struct TowerMap {
  std::vector<std::vector<int>> level_maps;  // level n -> index map of length level_sizes[n]
  bool unique = true;  // every transported point had exactly one candidate
};

TowerMap tower_map(const UrysohnTower& tx, const UrysohnTower& ty, const std::vector<int>& seed_map);

}  // namespace topogrey
