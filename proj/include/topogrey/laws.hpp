#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topogrey/greygroupoid.hpp"
#include "topogrey/katetov.hpp"
#include "topogrey/report.hpp"
#include "topogrey/rng.hpp"
#include "topogrey/structure.hpp"

namespace topogrey {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int count = 100;
  /// Harness self-test: perturbs one composition value so the suite must fail
  /// with a small shrunk witness.
  bool plant_mutation = false;
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

/// Runs the named property suite over `count` seeded instances.  Instances
/// run in a work pool capped by TOPOGREY_THREADS; results are merged in
/// instance order, so reports are reproducible.
Report check_laws(const std::string& suite, const SuiteOptions& opts);

// ---- shared deterministic generators ----------------------------------------

/// Strict metric space with distances in {1/q..q/q}, triangle enforced by
/// min-plus closure.
FinMetricSpace random_metric_space(Rng& rng, int max_points, std::int64_t q);

/// Symmetric zero-diagonal table closed under min-plus (zeros allowed off the
/// diagonal).
Pseudometric random_pseudometric(Rng& rng, const Carrier& c, std::int64_t q);

GreySet random_grey_set(Rng& rng, Carrier c, std::int64_t den);
GreyRelation random_grey_relation(Rng& rng, Carrier src, Carrier tgt, std::int64_t den);

/// Disjoint unions of cyclic groups, pair groupoids, discrete groupoids and
/// rotation action groupoids, capped at max_morphisms.
FinGroupoid random_groupoid(Rng& rng, size_t max_morphisms);

Subgroupoid random_subgroupoid(const FinGroupoid& g, Rng& rng);

/// Norm via closure of a random strictly unital set; unit objects are either
/// all objects or a random nonempty subset.
GreyNorm random_norm(const FinGroupoid& g, Rng& rng, std::int64_t q, bool all_units);

DiscreteStructureFamily random_family(Rng& rng, int max_base, int max_fiber);

/// Saturates a norm family under pointwise truncated sums.
std::vector<GreyNorm> close_under_sum(const FinGroupoid& g, std::vector<GreyNorm> norms);

Carrier make_carrier(const std::string& prefix, int n);

}  // namespace topogrey
