#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topogrey/rational.hpp"

namespace topogrey {

/// Finite ordered carrier with named points.  Grey sets and relations store a
/// dense value table against one (or a pair) of these.
using Carrier = std::vector<std::string>;

int carrier_index(const Carrier& c, const std::string& point);

/// Grey subset A of a carrier: a total map point -> [0,1].  Under the reversed
/// order, 0 is full membership; the zero-indicator of an ordinary subset takes
/// values in {0,1}.
struct GreySet {
  Carrier carrier;
  std::vector<Rational01> values;

  GreySet() = default;
  GreySet(Carrier c, std::vector<Rational01> v);
  /// Constant grey set.
  static GreySet constant(Carrier c, Rational01 r);
  /// Zero-indicator of a subset (0 on members, 1 elsewhere).
  static GreySet zero_indicator(Carrier c, const std::vector<std::string>& members);

  const Rational01& at(int i) const { return values[static_cast<size_t>(i)]; }
  const Rational01& of(const std::string& point) const;
  size_t size() const { return carrier.size(); }
  bool is_crisp() const;

  friend bool operator==(const GreySet&, const GreySet&) = default;
};

/// Grey binary relation R between two carriers, stored row-major
/// (source-major) as a dense table.
struct GreyRelation {
  Carrier source, target;
  std::vector<Rational01> values;

  GreyRelation() = default;
  GreyRelation(Carrier src, Carrier tgt, std::vector<Rational01> v);
  static GreyRelation constant(Carrier src, Carrier tgt, Rational01 r);
  /// Zero-indicator of the diagonal: the identity for min-plus composition.
  static GreyRelation diagonal(Carrier c);

  const Rational01& at(int i, int j) const {
    return values[static_cast<size_t>(i) * target.size() + static_cast<size_t>(j)];
  }
  Rational01& at(int i, int j) {
    return values[static_cast<size_t>(i) * target.size() + static_cast<size_t>(j)];
  }
  bool is_square() const { return source == target; }

  friend bool operator==(const GreyRelation&, const GreyRelation&) = default;
};

// ---- pointwise lattice / truncated arithmetic on grey sets ----------------

GreySet grey_union(const GreySet& a, const GreySet& b);         // pointwise min
GreySet grey_intersection(const GreySet& a, const GreySet& b);  // pointwise max
GreySet grey_add(const GreySet& a, const GreySet& b);           // pointwise trunc_add
GreySet shift_add(const GreySet& a, const Rational01& r);
GreySet shift_sub(const GreySet& a, const Rational01& r);

/// A_{<r} (strict) or A_{<=r} (weak) as a list of carrier points.
std::vector<std::string> sublevel(const GreySet& a, const Rational01& r, bool strict);

// ---- images along point maps ----------------------------------------------

/// Total map between carriers, images stored as target indices.
struct PointMap {
  Carrier source, target;
  std::vector<int> map;

  PointMap() = default;
  PointMap(Carrier src, Carrier tgt, std::vector<int> m);
  static PointMap identity(Carrier c);
  int operator()(int i) const { return map[static_cast<size_t>(i)]; }
};

/// f(A)(y) = min over the fiber f^-1(y) (empty fiber -> 1).
GreySet map_image(const PointMap& f, const GreySet& a);
/// f^-1(B) = B o f.
GreySet map_preimage(const PointMap& f, const GreySet& b);

// ---- relational calculus ---------------------------------------------------

/// R[A](y) = min_x (R(x,y) +. A(x)).
GreySet rel_image(const GreyRelation& r, const GreySet& a);
/// (S . R)(x,z) = min_y (R(x,y) +. S(y,z)); R: X*Y, S: Y*Z.
GreyRelation rel_compose(const GreyRelation& s, const GreyRelation& r);
GreyRelation rel_inverse(const GreyRelation& r);

/// Sum relation A (+) B on the product carrier (pairs named "(a,b)").
GreyRelation product_sum_relation(const GreyRelation& dx, const GreyRelation& dy);
std::string product_point_name(const std::string& a, const std::string& b);

// ---- pseudometrics ----------------------------------------------------------

struct PseudometricVerdict {
  bool ok = false;
  /// "reflexive" / "symmetric" / "triangle" on failure.
  std::string failed_axiom;
  /// Points of the violating pair/triple (triangle witness (x,y,z) means
  /// d(x,z) > d(x,y) + d(y,z)).
  std::vector<std::string> witness;
};

PseudometricVerdict pseudometric_check(const GreyRelation& d);

/// A grey equivalence relation, i.e. a square relation passing
/// pseudometric_check.  The checked constructor is the only way in.
struct Pseudometric {
  GreyRelation rel;

  explicit Pseudometric(GreyRelation d);
  const Carrier& carrier() const { return rel.source; }
  const Rational01& d(int i, int j) const { return rel.at(i, j); }
};

/// [A] := d[A]; for ordinary A this is the distance-to-A function.
GreySet saturate(const Pseudometric& d, const GreySet& a);

}  // namespace topogrey
