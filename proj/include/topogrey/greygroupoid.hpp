#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topogrey/groupoid.hpp"
#include "topogrey/metric.hpp"
#include "topogrey/structure.hpp"

namespace topogrey {

/// Grey subsets of a groupoid are value tables indexed by morphism.
using GreyMorphismSet = std::vector<Rational01>;

struct GreyNormVerdict {
  bool ok = false;
  std::string failed_axiom;  // "unital-crisp" / "strict" / "symmetric" / "submultiplicative"
  std::vector<int> witness;
};

/// Strict grey subgroupoid check: unit values crisp, value < 1 forces zero
/// units at both endpoints, symmetric, and U(g*h) <= U(g) +. U(h).
GreyNormVerdict grey_norm_check(const FinGroupoid& g, const GreyMorphismSet& u);

/// A checked strict grey subgroupoid (norm).
struct GreyNorm {
  GreyMorphismSet values;

  GreyNorm() = default;
  GreyNorm(const FinGroupoid& g, GreyMorphismSet v);  // validates

  const Rational01& at(int m) const { return values[static_cast<size_t>(m)]; }
  /// Unit objects x with U(unit(x)) = 0.
  std::vector<int> unit_objects(const FinGroupoid& g) const;
  bool is_crisp() const;
  /// Zero-indicator norm of a (validated) subgroupoid.
  static GreyNorm crisp(const FinGroupoid& g, const Subgroupoid& u);
};

/// Pointwise truncated sum of norms (again a norm).
GreyNorm norm_sum(const FinGroupoid& g, const GreyNorm& a, const GreyNorm& b);

/// (A . B)(g) = min over factorizations g = h*k of A(h) +. B(k); empty min 1.
GreyMorphismSet grey_conv(const FinGroupoid& g, const GreyMorphismSet& a, const GreyMorphismSet& b);
GreyMorphismSet grey_inv(const FinGroupoid& g, const GreyMorphismSet& a);
/// Zero-indicator of a morphism set.
GreyMorphismSet grey_indicator(const FinGroupoid& g, const std::vector<int>& members);

bool is_strictly_unital(const FinGroupoid& g, const GreyMorphismSet& a, int* witness = nullptr);

/// Least grey norm above A (in the reversed order), computed as a min-plus
/// shortest-path closure over factorizations.  A must be strictly unital.
GreyNorm grey_closure(const FinGroupoid& g, const GreyMorphismSet& a);

// ---- norm <-> left-invariant pseudometric ----------------------------------

/// d_U on the morphisms with source in the norm's unit objects; pairs in
/// different target fibers sit at distance 1.
struct LeftInvariantMetric {
  std::vector<int> domain;  // morphism indices, ascending
  GreyRelation rel;         // carrier: the domain's morphism ids
};

LeftInvariantMetric norm_to_metric(const FinGroupoid& g, const GreyNorm& u);

/// Inverse direction: U_d(g) = d(unit(tgt g), g) (1 outside the domain).
/// Checks that d is a left-invariant fiberwise pseudometric first.
GreyNorm metric_to_norm(const FinGroupoid& g, const std::vector<int>& unit_objects,
                        const LeftInvariantMetric& d);

/// Exhaustive left-invariance check: d(k*g, k*h) = d(g, h).
bool is_left_invariant(const FinGroupoid& g, const LeftInvariantMetric& d);

// ---- filtrations and Birkhoff-Kakutani synthesis ----------------------------

struct Filtration {
  std::vector<std::vector<int>> levels;  // descending morphism sets, sorted
};

struct FiltrationVerdict {
  bool ok = false;
  std::string failed_invariant;  // "descending" / "symmetric" / "unital" / "units" / "triple"
  int level = -1;
  std::vector<int> witness;
};

FiltrationVerdict filtration_check(const FinGroupoid& g, const Filtration& f);

/// Greedy synthesis: V_0 is the largest symmetric unital subset of U_{<1}
/// with units exactly V; V_{n+1} removes, from V_n cut at U_{<2^-(n+2)}, the
/// highest-indexed morphism (with its inverse) participating in a violating
/// triple until S*S*S <= V_n.
Filtration synthesize_filtration(const FinGroupoid& g, const GreyMorphismSet& target,
                                 const std::vector<int>& unit_objects, int depth);

struct BirkhoffCertificate {
  bool is_norm = false;
  bool unit_set_ok = false;
  bool chaining_ok = false;          // W(g) >= V'(g)/2 everywhere
  bool target_supplied = false;
  bool target_condition_met = false; // V_n <= U_{<2^-(n+1)} for every level
  bool target_dominated = false;     // W >= U pointwise
};

struct BirkhoffResult {
  GreyNorm w;
  GreyMorphismSet vprime;
  BirkhoffCertificate cert;
};

/// W = <V'> where V'(g) = 2^-n for the deepest level containing g (units of
/// the shared unit set sit at 0, morphisms outside every level at 1).
BirkhoffResult birkhoff_kakutani(const FinGroupoid& g, const Filtration& f,
                                 const GreyMorphismSet* target = nullptr);

// ---- coset pseudometric spaces ----------------------------------------------

struct CosetMetricSpace {
  FinMetricSpace space;
  std::vector<int> domain;     // morphisms with source in the unit objects
  std::vector<int> class_of;   // morphism -> point index, -1 off domain
  std::vector<int> tau;        // point -> object
  std::vector<int> unit_point; // object -> point, -1 if none
  std::vector<std::vector<int>> left_act;  // [morphism][point] -> point, -1 if not composable
};

CosetMetricSpace coset_metric_space(const FinGroupoid& g, const GreyNorm& u);

// ---- right multiplication grey relations with sandwich bounds ---------------

struct SandwichResult {
  bool ok = false;                  // preconditions hold
  std::string failed_precondition;  // "domain" / "small" / "domination"
  std::vector<int> witness;
  /// Quotient-level table, dense over (point of G/U) x (point of G/V);
  /// cross-fiber pairs carry 1.
  std::vector<Rational01> table;
  bool invariant_ok = false;  // descends: R = (d_U (+) d_V)-saturation of R
  bool sandwich_ok = false;   // d_V(gS,h) >= R(g,h) >= d_V(gS,h) -. r, exactly
};

SandwichResult right_mult_grey_relation(const FinGroupoid& g, const GreyNorm& u, const GreyNorm& v,
                                        const std::vector<int>& s, const Rational01& r);

// ---- the metric canonical structure -----------------------------------------

struct MetricCanonicalStructure {
  const FinGroupoid* g = nullptr;
  std::vector<GreyNorm> norms;
  std::vector<std::vector<std::vector<int>>> sections;  // per norm
  std::vector<CosetMetricSpace> spaces;                 // per norm

  struct RelSym {
    int u, v, s;
    Rational01 r;                  // sharp smallness radius of the section
    std::vector<Rational01> table; // dense (points of G/U) x (points of G/V)
  };
  std::vector<RelSym> rels;
};

/// Per-norm sections sufficient for the basis precondition: every singleton
/// plus the unit section.
std::vector<std::vector<int>> default_metric_sections(const FinGroupoid& g, const GreyNorm& u);

/// Preconditions: norm family closed under +., and for every morphism in a
/// norm's domain and every positive realized distance r there is a
/// U_{<r}-small section containing it.  Throws "insufficient basis" with the
/// failing (g, r) otherwise.
MetricCanonicalStructure metric_canonical_structure(const FinGroupoid& g, std::vector<GreyNorm> norms,
                                                    std::vector<std::vector<std::vector<int>>> sections);

/// Sort-wise maps between the metric fibers at x and y.
using MetricFiberMap = std::vector<std::vector<int>>;

std::vector<MetricFiberMap> enumerate_metric_homs(const MetricCanonicalStructure& mc, int x, int y);
std::vector<MetricFiberMap> enumerate_metric_isos(const MetricCanonicalStructure& mc, int x, int y);

/// Experimental: sort-wise maps that are Lipschitz and relation-preserving
/// only up to eps.  At eps = 0 this is exactly enumerate_metric_homs; the
/// count is exposed as a statistic, no density claim is attached to it.
size_t count_metric_eps_homs(const MetricCanonicalStructure& mc, int x, int y, const Rational01& eps);

struct MetricYonedaReport {
  bool ok = false;
  bool phi_injective = true;
  bool eta_onto_families = true;   // g -> (pi_U g)_U bijects onto coherent families
  bool eta_iso = true;             // eta : G(x,y) ~ Iso(M)(x,y) per pair
  std::string failure;
  std::vector<std::pair<int, int>> separating_violations;  // indistinguishable morphism pairs
  std::vector<std::tuple<int, int, size_t, size_t>> hom_counts;  // x, y, |G(x,y)|, |Iso(x,y)|
};

MetricYonedaReport metric_yoneda_check(const MetricCanonicalStructure& mc);

}  // namespace topogrey
