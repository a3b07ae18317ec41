#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topogrey/structure.hpp"

namespace topogrey {

/// The canonical structure of a groupoid with respect to a family of
/// subgroupoids and per-subgroupoid section families: one sort per
/// subgroupoid, fibers the coset sets over each object, and a function symbol
/// for every admissible right multiplication (-)*S.
struct CanonicalStructure {
  const FinGroupoid* g = nullptr;
  std::vector<Subgroupoid> subs;
  std::vector<std::vector<std::vector<int>>> sections;  // per sub: morphism sets
  std::vector<CosetSpace> cosets;                       // per sub

  struct FnSym {
    int u, v, s;            // sorts u -> v via sections[v][s]
    std::vector<int> map;   // class of G/U -> class of G/V
  };
  std::vector<FnSym> fns;

  DiscreteStructureFamily family;                        // fiberwise view over G^0
  std::vector<std::vector<std::vector<int>>> fiber_classes;  // [sort][object] -> coset class ids
  std::vector<std::vector<int>> class_pos;               // [sort][class] -> index within its fiber

  int sort_count() const { return static_cast<int>(subs.size()); }
  bool sort_at(int u, int x) const;  // x is a unit object of subs[u]
};

/// Default section family for a subgroupoid: the unit section plus every
/// single left coset.
std::vector<std::vector<int>> default_sections(const FinGroupoid& g, const Subgroupoid& u);

CanonicalStructure canonical_structure(const FinGroupoid& g, std::vector<Subgroupoid> subs,
                                       std::vector<std::vector<std::vector<int>>> sections);

/// Coherent coset family at (x, y): per sort containing x, a class id of that
/// sort's coset space with target y (entries -1 for sorts not containing x).
using CosetFamily = std::vector<int>;

/// Phi(h) = (h_U(U_x))_U, as class ids.
CosetFamily yoneda_phi(const CanonicalStructure& cs, int x, int y, const FiberMap& hom);

/// Coherence of a family under the canonical projections pi_{U,V}.
bool family_coherent(const CanonicalStructure& cs, int x, const CosetFamily& fam,
                     std::pair<int, int>* bad_pair = nullptr);

/// All coherent families at (x, y).
std::vector<CosetFamily> enumerate_coherent_families(const CanonicalStructure& cs, int x, int y);

/// Psi(a)_U(b) = a_V * S for any admissible section S containing b and
/// V <= S*S^-1 containing x; constancy over the admissible choices is
/// asserted.  Throws on incoherent input or when no admissible (S, V) exists.
FiberMap yoneda_psi(const CanonicalStructure& cs, int x, int y, const CosetFamily& fam);

/// eta(g): left multiplication as a fiber map M_{src g} -> M_{tgt g}.
FiberMap eta_of(const CanonicalStructure& cs, int g);

struct EtaReport {
  bool ok = false;
  bool functorial = false;
  bool phi_psi_roundtrip = false;
  std::string failure;
  /// Per object pair: |G(x,y)| and |Iso(M)(x,y)| (equal when ok).
  std::vector<std::tuple<int, int, size_t, size_t>> hom_counts;
};

/// Builds eta, checks functoriality, injectivity, surjectivity onto the
/// enumerated isomorphism sets, and the Phi/Psi round trips.
EtaReport verify_eta_iso(const CanonicalStructure& cs);

}  // namespace topogrey
