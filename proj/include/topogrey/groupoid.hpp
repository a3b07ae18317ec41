#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topogrey/rational.hpp"

namespace topogrey {

/// Finite groupoid.  Objects are identified with their unit morphisms; the
/// composition g*h (apply h first) is defined when src(g) == tgt(h).
struct FinGroupoid {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::vector<int> src, tgt;              // per morphism, object indices
  std::vector<int> unit;                  // per object, morphism index
  std::vector<std::vector<int>> compose;  // compose[g][h] = g*h, -1 if not composable
  std::vector<int> inverse;

  size_t object_count() const { return objects.size(); }
  size_t size() const { return morphisms.size(); }
  bool is_unit(int g) const { return unit[static_cast<size_t>(src[static_cast<size_t>(g)])] == g; }
  bool composable(int g, int h) const { return src[static_cast<size_t>(g)] == tgt[static_cast<size_t>(h)]; }
  int mul(int g, int h) const;  // checked
  int inv(int g) const { return inverse[static_cast<size_t>(g)]; }
  std::vector<int> hom(int x, int y) const;  // morphisms x -> y, ascending
  int morphism_index(const std::string& id) const;

  // -- canned instances used across tests and fixtures --
  static FinGroupoid cyclic_group(int n);         // Z/n, morphisms "0".."n-1"
  static FinGroupoid pair_groupoid(int n);        // all hom-sets singletons
  static FinGroupoid discrete(int n);             // units only
  static FinGroupoid disjoint_union(const FinGroupoid& a, const FinGroupoid& b);
};

struct GroupoidVerdict {
  bool ok = false;
  std::string failed_axiom;
  std::vector<int> witness;  // morphism indices involved
};

GroupoidVerdict validate_groupoid(const FinGroupoid& g);

/// Orbits (connected components of the orbit relation): object -> orbit id,
/// numbered by least member.
std::vector<int> orbits(const FinGroupoid& g);

/// Symmetric composition-closed (hence unital) morphism set.
struct Subgroupoid {
  std::vector<int> morphisms;  // ascending

  bool contains(int m) const;
  /// Unit objects of the subgroupoid.
  std::vector<int> unit_objects(const FinGroupoid& g) const;
};

bool is_subgroupoid(const FinGroupoid& g, const std::vector<int>& morphs);
/// Least subgroupoid containing A; the empty set yields the empty subgroupoid.
Subgroupoid generated_subgroupoid(const FinGroupoid& g, const std::vector<int>& a);

// -- morphism-set calculus (used by coset machinery and the grey layer)------

std::vector<int> set_product(const FinGroupoid& g, const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_inverse(const FinGroupoid& g, const std::vector<int>& a);

/// An action of G on a set over the objects.
struct GroupoidAction {
  std::vector<std::string> elements;
  std::vector<int> anchor;             // element -> object (the map p)
  std::vector<std::vector<int>> act;   // act[g][a] = g*a, -1 when src(g) != p(a)
};

struct ActionVerdict {
  bool ok = false;
  std::string failed_axiom;
  std::vector<int> witness;
};

ActionVerdict validate_action(const FinGroupoid& g, const GroupoidAction& a);

/// The action groupoid (category of elements) G x| A.
FinGroupoid action_groupoid(const FinGroupoid& g, const GroupoidAction& a);

/// Left cosets gU of a subgroupoid: classes of g ~ h iff tgt(g) = tgt(h) and
/// g^-1 * h in U, over morphisms with src in U's unit objects.
struct CosetSpace {
  std::vector<std::vector<int>> classes;      // each ascending; class id by least member
  std::vector<int> class_of;                  // morphism -> class id, -1 off domain
  std::vector<int> tau;                       // class -> target object
  std::vector<int> unit_class;                // object -> class of its unit, -1 if none
  std::vector<std::vector<int>> left_act;     // left_act[g][c] = class of g*c, -1 if not composable
};

CosetSpace coset_space(const FinGroupoid& g, const Subgroupoid& u);

struct RightMultResult {
  bool ok = false;
  std::string failed_precondition;  // "invariant" / "small" / "coverage"
  std::vector<int> witness;
  std::vector<int> map;  // G/U class -> G/V class
};

/// The right multiplication map (-)*S : G/U -> G/V for a V-invariant V-small
/// S with U <= S*S^-1; well-definedness and equivariance are verified.
RightMultResult right_mult_map(const FinGroupoid& g, const Subgroupoid& u, const Subgroupoid& v,
                               const std::vector<int>& s);

}  // namespace topogrey
