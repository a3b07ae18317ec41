#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topogrey/groupoid.hpp"

namespace topogrey {

/// A finite base with a finite multi-sorted structure per point.  Elements of
/// a fiber are addressed (sort index, element index); relations and functions
/// live fiberwise.
struct DiscreteStructureFamily {
  std::vector<std::string> base;
  std::vector<std::string> sorts;
  /// fibers[sort][base point] = element names.
  std::vector<std::vector<std::vector<std::string>>> fibers;

  struct Relation {
    std::string name;
    std::vector<int> arity;  // sort indices
    /// tuples[base point] = sorted list of element-index tuples.
    std::vector<std::vector<std::vector<int>>> tuples;
  };
  struct Function {
    std::string name;
    std::vector<int> arity;
    int value_sort = 0;
    /// graph[base point]: argument tuple -> value element index.
    std::vector<std::map<std::vector<int>, int>> graph;
  };
  std::vector<Relation> relations;
  std::vector<Function> functions;

  size_t fiber_size(int sort, int x) const { return fibers[static_cast<size_t>(sort)][static_cast<size_t>(x)].size(); }
  void validate() const;  // arities respected in every fiber
};

/// Sort-wise element map between two fibers of a family.
using FiberMap = std::vector<std::vector<int>>;

/// All fiber homomorphisms M_x -> M_y (backtracking, pruned on relation and
/// function preservation), in lexicographic order of the assignment vector.
std::vector<FiberMap> enumerate_homs(const DiscreteStructureFamily& m, int x, int y);
/// Isomorphisms only: bijective with structure-preserving inverse.
std::vector<FiberMap> enumerate_isos(const DiscreteStructureFamily& m, int x, int y);

bool is_fiber_hom(const DiscreteStructureFamily& m, int x, int y, const FiberMap& f);
bool is_fiber_iso(const DiscreteStructureFamily& m, int x, int y, const FiberMap& f);

/// Single-sorted relational family: disjoint union of all sorts plus k marked
/// constants per fiber; function symbols become graph relations, sorts become
/// unary predicates, constants get singleton predicates C_i.
DiscreteStructureFamily add_constants(const DiscreteStructureFamily& m, int k);

/// The canonical bijection Iso(M)(x,y) ~ Iso(add_constants(M,k))(x,y),
/// verified by exhaustive enumeration on both sides.
bool constants_preserve_isos(const DiscreteStructureFamily& m, const DiscreteStructureFamily& mk,
                             int k, int x, int y);

// ---- the logic action on a fixed finite universe ---------------------------

/// A single-sorted relational structure on universe {0..N-1}.
struct Structure {
  int universe = 0;
  std::vector<std::string> rel_names;
  std::vector<int> rel_arity;
  std::vector<std::vector<std::vector<int>>> rel_tuples;  // sorted per symbol

  friend bool operator==(const Structure&, const Structure&) = default;
};

Structure pushforward(const Structure& s, const std::vector<int>& perm);

enum class UniformizeMode { plain, injective_on_objects };

/// A functor into S_N acting on structures over the fixed universe; objects
/// map to pushforward structures, morphisms to permutations.
struct LogicActionFunctor {
  int universe = 0;
  UniformizeMode mode = UniformizeMode::plain;
  std::vector<Structure> objects;                       // F(x) per base point
  std::vector<std::vector<int>> element_position;       // flattened fiber element -> universe slot, per base point
  DiscreteStructureFamily padded;                       // the single-sorted padded family
  std::vector<std::vector<int>> marker_positions;       // io mode: constant slots encoding x

  /// F on morphisms: the permutation induced by a fiber iso of the padded family.
  std::vector<int> morphism_image(int x, int y, const FiberMap& padded_iso) const;
};

/// Pushes every fiber onto a common universe of size N = max fiber size +
/// k_extra, padding each fiber with constants.  In injective_on_objects mode
/// the first constant block is placed at positions encoding the base point.
LogicActionFunctor uniformize(const DiscreteStructureFamily& m, UniformizeMode mode, int k_extra = 1);

struct UniformizeVerification {
  bool full = true, faithful = true;
  bool injective_on_objects = true;  // only meaningful in io mode
  bool orbit_reduction_injective = true;
  std::vector<int> witness;  // object pair on failure
};

/// Exhaustive verification against all of S_N.
UniformizeVerification verify_uniformize(const DiscreteStructureFamily& m, const LogicActionFunctor& f);

/// Decodes the base point from an io-mode structure via its constant markers;
/// returns -1 when no base point matches.
int decode_object(const LogicActionFunctor& f, const Structure& s);

// ---- functors between finite groupoids --------------------------------------

struct FinFunctor {
  std::vector<int> obj_map;  // G^0 -> H^0
  std::vector<int> mor_map;  // G -> H
};

struct FunctorAnalysis {
  bool valid = false;
  std::string invalid_reason;
  std::vector<int> witness;
  bool full = false, faithful = false, essentially_surjective = false;
  std::optional<FinFunctor> inverse;       // H -> G when an equivalence
  std::vector<int> unit_components;        // per y in H^0: morphism F(F'(y)) -> y
  std::vector<int> counit_components;      // per x in G^0: morphism F'(F(x)) -> x
  bool natural_squares_ok = false;
};

bool is_functor(const FinGroupoid& g, const FinGroupoid& h, const FinFunctor& f,
                std::string* reason = nullptr, std::vector<int>* witness = nullptr);

/// Flags by exhaustive hom-set comparison; when full + faithful + essentially
/// surjective, constructs the inverse equivalence and both natural
/// isomorphisms and verifies the natural-square condition on every morphism.
FunctorAnalysis functor_analysis(const FinGroupoid& g, const FinGroupoid& h, const FinFunctor& f);

}  // namespace topogrey
