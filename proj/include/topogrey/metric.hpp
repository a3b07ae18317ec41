#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topogrey/grey.hpp"

namespace topogrey {

/// Finite strict metric space of diameter <= 1 with exact rational distances.
struct FinMetricSpace {
  std::vector<std::string> points;
  std::vector<Rational01> dist;  // row-major n*n

  FinMetricSpace() = default;
  FinMetricSpace(std::vector<std::string> pts, std::vector<Rational01> table);
  static FinMetricSpace singleton(std::string name);
  /// Builds from the upper triangle given as (i, j, d) entries; missing pairs
  /// are an error.
  static FinMetricSpace from_pairs(std::vector<std::string> pts,
                                   const std::vector<std::tuple<int, int, Rational01>>& entries);

  size_t size() const { return points.size(); }
  const Rational01& d(int i, int j) const {
    return dist[static_cast<size_t>(i) * points.size() + static_cast<size_t>(j)];
  }
  int index(const std::string& name) const { return carrier_index(points, name); }

  friend bool operator==(const FinMetricSpace&, const FinMetricSpace&) = default;
};

struct MetricVerdict {
  bool ok = false;
  std::string failed_axiom;  // "diagonal" / "strict" / "symmetric" / "triangle"
  std::vector<int> witness;
};

MetricVerdict validate_metric(const FinMetricSpace& x);

/// Product space with the truncated sum metric; points named "(x,y)".
FinMetricSpace sum_product(const FinMetricSpace& x, const FinMetricSpace& y);

/// Restriction to a point subset (indices, kept in the given order).
FinMetricSpace subspace(const FinMetricSpace& z, const std::vector<int>& idxs);

/// Hausdorff distance between nonempty subsets of a common space.
Rational01 hausdorff_distance(const FinMetricSpace& z, const std::vector<int>& a,
                              const std::vector<int>& b);

/// A distance-preserving bijective pairing between point subsets of X and Y.
struct PartialIsometry {
  std::vector<std::pair<int, int>> pairs;
};

/// Back-and-forth search for a full isometric bijection X ~ Y extending the
/// seed.  Candidate order is lowest point index first, so the result is
/// deterministic.  Throws if the seed is not a partial isometry.
std::optional<PartialIsometry> find_isometry(const FinMetricSpace& x, const FinMetricSpace& y,
                                             const PartialIsometry& seed = {});

/// Quotient of a pseudometric by its zero classes.  Class names are the
/// lowest-index representative's name.
struct MetricQuotient {
  FinMetricSpace space;
  std::vector<int> class_of;  // carrier index -> quotient point index
};

MetricQuotient metric_quotient(const Pseudometric& d);

}  // namespace topogrey
