#include "topogrey/laws.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>

#include "topogrey/io.hpp"
#include "topogrey/yoneda.hpp"

namespace topogrey {

Carrier make_carrier(const std::string& prefix, int n) {
  Carrier c;
  for (int i = 0; i < n; ++i) c.push_back(prefix + std::to_string(i));
  return c;
}

FinMetricSpace random_metric_space(Rng& rng, int max_points, std::int64_t q) {
  int n = rng.range(1, max_points);
  std::vector<Rational01> table(static_cast<size_t>(n) * static_cast<size_t>(n), Rational01::zero());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational01 v(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q))) + 1, q);
      table[static_cast<size_t>(i) * n + j] = v;
      table[static_cast<size_t>(j) * n + i] = v;
    }
  // Min-plus closure enforces the triangle inequality and keeps values >= 1/q.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational01 via = table[static_cast<size_t>(i) * n + k].trunc_add(table[static_cast<size_t>(k) * n + j]);
        if (via < table[static_cast<size_t>(i) * n + j]) table[static_cast<size_t>(i) * n + j] = via;
      }
  return FinMetricSpace(make_carrier("p", n), std::move(table));
}

Pseudometric random_pseudometric(Rng& rng, const Carrier& c, std::int64_t q) {
  int n = static_cast<int>(c.size());
  GreyRelation rel = GreyRelation::constant(c, c, Rational01::zero());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational01 v = rng.rational(q);
      rel.at(i, j) = v;
      rel.at(j, i) = v;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational01 via = rel.at(i, k).trunc_add(rel.at(k, j));
        if (via < rel.at(i, j)) rel.at(i, j) = via;
      }
  return Pseudometric(rel);
}

GreySet random_grey_set(Rng& rng, Carrier c, std::int64_t den) {
  std::vector<Rational01> v(c.size());
  for (auto& r : v) r = rng.rational(den);
  return GreySet(std::move(c), std::move(v));
}

GreyRelation random_grey_relation(Rng& rng, Carrier src, Carrier tgt, std::int64_t den) {
  std::vector<Rational01> v(src.size() * tgt.size());
  for (auto& r : v) r = rng.rational(den);
  return GreyRelation(std::move(src), std::move(tgt), std::move(v));
}

FinGroupoid random_groupoid(Rng& rng, size_t max_morphisms) {
  auto block = [&]() -> FinGroupoid {
    switch (rng.below(4)) {
      case 0:
        return FinGroupoid::cyclic_group(rng.range(1, 4));
      case 1:
        return FinGroupoid::pair_groupoid(rng.range(2, 3));
      case 2:
        return FinGroupoid::discrete(rng.range(1, 2));
      default: {
        int k = rng.range(2, 4);
        std::vector<int> divisors;
        for (int m = 2; m <= k; ++m)
          if (k % m == 0) divisors.push_back(m);
        int m = divisors[static_cast<size_t>(rng.below(divisors.size()))];
        FinGroupoid zk = FinGroupoid::cyclic_group(k);
        GroupoidAction a;
        for (int e = 0; e < m; ++e) {
          a.elements.push_back("a" + std::to_string(e));
          a.anchor.push_back(0);
        }
        a.act.assign(zk.size(), std::vector<int>(static_cast<size_t>(m), -1));
        for (int j = 0; j < k; ++j)
          for (int e = 0; e < m; ++e) a.act[static_cast<size_t>(j)][static_cast<size_t>(e)] = (e + j) % m;
        return action_groupoid(zk, a);
      }
    }
  };
  FinGroupoid g = block();
  while (g.size() > max_morphisms) g = block();
  while (rng.chance(1, 2)) {
    FinGroupoid b = block();
    if (g.size() + b.size() > max_morphisms) break;
    // Disambiguate names across blocks.
    for (auto& o : b.objects) o = "u" + std::to_string(g.object_count()) + o;
    for (auto& m : b.morphisms) m = "u" + std::to_string(g.size()) + m;
    g = FinGroupoid::disjoint_union(g, b);
  }
  return g;
}

Subgroupoid random_subgroupoid(const FinGroupoid& g, Rng& rng) {
  std::vector<int> seeds;
  int k = rng.range(1, 2);
  for (int i = 0; i < k; ++i) seeds.push_back(static_cast<int>(rng.below(g.size())));
  return generated_subgroupoid(g, seeds);
}

GreyNorm random_norm(const FinGroupoid& g, Rng& rng, std::int64_t q, bool all_units) {
  std::vector<bool> unit_obj(g.object_count(), true);
  if (!all_units) {
    bool any = false;
    for (size_t x = 0; x < g.object_count(); ++x) {
      unit_obj[x] = rng.chance(2, 3);
      any = any || unit_obj[x];
    }
    if (!any) unit_obj[0] = true;
  }
  GreyMorphismSet a(g.size(), Rational01::one());
  for (size_t x = 0; x < g.object_count(); ++x)
    if (unit_obj[x]) a[static_cast<size_t>(g.unit[x])] = Rational01::zero();
  for (size_t m = 0; m < g.size(); ++m) {
    if (g.is_unit(static_cast<int>(m)) || static_cast<int>(m) > g.inv(static_cast<int>(m))) continue;
    if (!unit_obj[static_cast<size_t>(g.src[m])] || !unit_obj[static_cast<size_t>(g.tgt[m])]) continue;
    Rational01 v = rng.chance(1, 4) ? Rational01::one() : rng.rational(q);
    a[m] = v;
    a[static_cast<size_t>(g.inv(static_cast<int>(m)))] = v;
  }
  return grey_closure(g, a);
}

DiscreteStructureFamily random_family(Rng& rng, int max_base, int max_fiber_total) {
  DiscreteStructureFamily m;
  int nb = rng.range(1, max_base);
  m.base = make_carrier("x", nb);
  int ns = rng.range(1, 2);
  for (int s = 0; s < ns; ++s) m.sorts.push_back("P" + std::to_string(s));
  m.fibers.assign(static_cast<size_t>(ns), std::vector<std::vector<std::string>>(static_cast<size_t>(nb)));
  for (int x = 0; x < nb; ++x) {
    int budget = max_fiber_total;
    for (int s = 0; s < ns; ++s) {
      int sz = rng.range(0, budget);
      if (s + 1 == ns && budget == max_fiber_total && sz == 0) sz = rng.range(0, budget);
      budget -= sz;
      for (int e = 0; e < sz; ++e)
        m.fibers[static_cast<size_t>(s)][static_cast<size_t>(x)].push_back("e" + std::to_string(e));
    }
  }
  int nrel = rng.range(1, 2);
  for (int r = 0; r < nrel; ++r) {
    DiscreteStructureFamily::Relation rel;
    rel.name = "R" + std::to_string(r);
    int arity = rng.range(1, 2);
    for (int i = 0; i < arity; ++i) rel.arity.push_back(rng.range(0, ns - 1));
    rel.tuples.resize(static_cast<size_t>(nb));
    for (int x = 0; x < nb; ++x) {
      std::vector<std::vector<int>> all;
      std::vector<int> t(static_cast<size_t>(arity), 0);
      auto rec = [&](auto&& self, int i) -> void {
        if (i == arity) {
          all.push_back(t);
          return;
        }
        size_t n = m.fiber_size(rel.arity[static_cast<size_t>(i)], x);
        for (size_t e = 0; e < n; ++e) {
          t[static_cast<size_t>(i)] = static_cast<int>(e);
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      for (const auto& tuple : all)
        if (rng.chance(1, 3)) rel.tuples[static_cast<size_t>(x)].push_back(tuple);
      std::sort(rel.tuples[static_cast<size_t>(x)].begin(), rel.tuples[static_cast<size_t>(x)].end());
    }
    m.relations.push_back(std::move(rel));
  }
  // A unary function when its total graph exists in every fiber.
  if (rng.chance(1, 2)) {
    int src = rng.range(0, ns - 1), val = rng.range(0, ns - 1);
    bool feasible = true;
    for (int x = 0; x < nb; ++x)
      if (m.fiber_size(src, x) > 0 && m.fiber_size(val, x) == 0) feasible = false;
    if (feasible) {
      DiscreteStructureFamily::Function fn;
      fn.name = "f";
      fn.arity = {src};
      fn.value_sort = val;
      fn.graph.resize(static_cast<size_t>(nb));
      for (int x = 0; x < nb; ++x)
        for (size_t e = 0; e < m.fiber_size(src, x); ++e)
          fn.graph[static_cast<size_t>(x)][{static_cast<int>(e)}] =
              static_cast<int>(rng.below(m.fiber_size(val, x)));
      m.functions.push_back(std::move(fn));
    }
  }
  m.validate();
  return m;
}

std::vector<GreyNorm> close_under_sum(const FinGroupoid& g, std::vector<GreyNorm> norms) {
  std::vector<GreyNorm> out;
  for (auto& n : norms) {
    bool seen = false;
    for (const auto& u : out) seen = seen || u.values == n.values;
    if (!seen) out.push_back(std::move(n));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = out.size();
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        GreyNorm s = norm_sum(g, out[a], out[b]);
        bool found = false;
        for (const auto& u : out) found = found || u.values == s.values;
        if (!found) {
          out.push_back(std::move(s));
          grew = true;
          if (out.size() > 64) throw Error("close_under_sum: family does not close within 64 norms");
        }
      }
  }
  return out;
}

// ===== suite machinery =======================================================

namespace {

struct LawResult {
  bool pass = true;
  json witness;  // set on failure
  json stats;    // optional per-instance statistics
};

struct InstanceOutcome {
  std::vector<LawResult> laws;
  std::string error;
};

using InstanceFn = std::function<InstanceOutcome(std::uint64_t instance_seed, bool mutate)>;

struct SuiteDef {
  std::string name;
  std::vector<std::string> laws;
  InstanceFn run;
};

int pool_size() {
  if (const char* env = std::getenv("TOPOGREY_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

json carrier_json(const Carrier& c) { return json(c); }

json relation_witness(const GreyRelation& r) { return grey_relation_to_json(r); }

// ---- grey-algebra -----------------------------------------------------------

GreyRelation restrict_relation(const GreyRelation& r, const std::vector<int>& si, const std::vector<int>& ti) {
  Carrier src, tgt;
  for (int i : si) src.push_back(r.source[static_cast<size_t>(i)]);
  for (int j : ti) tgt.push_back(r.target[static_cast<size_t>(j)]);
  std::vector<Rational01> v;
  for (int i : si)
    for (int j : ti) v.push_back(r.at(i, j));
  return GreyRelation(std::move(src), std::move(tgt), std::move(v));
}

// Associativity probe with an optional planted defect in the left route.
bool assoc_holds(const GreyRelation& r, const GreyRelation& s, const GreyRelation& t, bool mutate) {
  GreyRelation lhs = rel_compose(t, rel_compose(s, r));
  if (mutate && !lhs.values.empty())
    lhs.values[0] = lhs.values[0].is_one() ? Rational01(1, 2) : Rational01::one();
  return lhs == rel_compose(rel_compose(t, s), r);
}

InstanceOutcome grey_algebra_instance(std::uint64_t seed, bool mutate) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(10);
  Carrier cx = make_carrier("x", rng.range(1, 4));
  Carrier cy = make_carrier("y", rng.range(1, 4));
  Carrier cz = make_carrier("z", rng.range(1, 4));
  Carrier cw = make_carrier("w", rng.range(1, 4));
  GreyRelation r = random_grey_relation(rng, cx, cy, 8);
  GreyRelation s = random_grey_relation(rng, cy, cz, 8);
  GreyRelation t = random_grey_relation(rng, cz, cw, 8);

  // 0: composition associativity (with greedy carrier shrinking on failure).
  if (!assoc_holds(r, s, t, mutate)) {
    GreyRelation mr = r, ms = s, mt = t;
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      auto all_but = [](size_t n, size_t drop) {
        std::vector<int> idx;
        for (size_t i = 0; i < n; ++i)
          if (i != drop) idx.push_back(static_cast<int>(i));
        return idx;
      };
      auto full = [](size_t n) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        return idx;
      };
      for (size_t i = 0; i < mr.source.size() && !shrunk; ++i) {
        GreyRelation r2 = restrict_relation(mr, all_but(mr.source.size(), i), full(mr.target.size()));
        if (!r2.source.empty() && !assoc_holds(r2, ms, mt, mutate)) {
          mr = r2;
          shrunk = true;
        }
      }
      for (size_t i = 0; i < mr.target.size() && !shrunk; ++i) {
        GreyRelation r2 = restrict_relation(mr, full(mr.source.size()), all_but(mr.target.size(), i));
        GreyRelation s2 = restrict_relation(ms, all_but(ms.source.size(), i), full(ms.target.size()));
        if (!r2.target.empty() && !assoc_holds(r2, s2, mt, mutate)) {
          mr = r2;
          ms = s2;
          shrunk = true;
        }
      }
      for (size_t i = 0; i < ms.target.size() && !shrunk; ++i) {
        GreyRelation s2 = restrict_relation(ms, full(ms.source.size()), all_but(ms.target.size(), i));
        GreyRelation t2 = restrict_relation(mt, all_but(mt.source.size(), i), full(mt.target.size()));
        if (!s2.target.empty() && !assoc_holds(mr, s2, t2, mutate)) {
          ms = s2;
          mt = t2;
          shrunk = true;
        }
      }
      for (size_t i = 0; i < mt.target.size() && !shrunk; ++i) {
        GreyRelation t2 = restrict_relation(mt, full(mt.source.size()), all_but(mt.target.size(), i));
        if (!t2.target.empty() && !assoc_holds(mr, ms, t2, mutate)) {
          mt = t2;
          shrunk = true;
        }
      }
    }
    out.laws[0].pass = false;
    out.laws[0].witness = {{"R", relation_witness(mr)}, {"S", relation_witness(ms)}, {"T", relation_witness(mt)}};
  }

  // 1: diagonal identity.
  {
    bool ok = rel_compose(GreyRelation::diagonal(cy), r) == r && rel_compose(r, GreyRelation::diagonal(cx)) == r;
    if (!ok) {
      out.laws[1].pass = false;
      out.laws[1].witness = relation_witness(r);
    }
  }

  // 2: inverse anti-homomorphism.
  {
    bool ok = rel_inverse(rel_compose(s, r)) == rel_compose(rel_inverse(r), rel_inverse(s));
    if (!ok) {
      out.laws[2].pass = false;
      out.laws[2].witness = {{"R", relation_witness(r)}, {"S", relation_witness(s)}};
    }
  }

  // 3: sublevel decomposition of the truncated sum (grid of half-denominators).
  {
    GreySet a = random_grey_set(rng, cx, 8);
    GreySet b = random_grey_set(rng, cx, 8);
    Rational01 rr = rng.rational(8);
    auto lhs = sublevel(grey_add(a, b), rr, true);
    std::vector<std::string> rhs;
    for (const auto& p : cx) {
      bool in = false;
      for (int ks = 0; ks <= 16 && !in; ++ks)
        for (int kt = 0; ks + kt <= 16 && !in; ++kt) {
          Rational01 sv(ks, 16), tv(kt, 16);
          if (sv.trunc_add(tv) > rr && !(ks + kt <= 16 && Rational01(ks + kt, 16) <= rr)) continue;
          if (!(Rational01(ks + kt, 16) <= rr)) continue;
          in = a.of(p) < sv && b.of(p) < tv;
        }
      if (in) rhs.push_back(p);
    }
    if (lhs != rhs) {
      out.laws[3].pass = false;
      out.laws[3].witness = {{"A", grey_set_to_json(a)}, {"B", grey_set_to_json(b)}, {"r", rr.str()}};
    }
  }

  // 4: saturation is decreasing and idempotent.
  {
    Pseudometric d = random_pseudometric(rng, cx, 8);
    GreySet a = random_grey_set(rng, cx, 8);
    GreySet sat = saturate(d, a);
    bool ok = saturate(d, sat) == sat;
    for (size_t i = 0; i < a.size(); ++i) ok = ok && sat.values[i] <= a.values[i];
    if (!ok) {
      out.laws[4].pass = false;
      out.laws[4].witness = {{"A", grey_set_to_json(a)}, {"d", relation_witness(d.rel)}};
    }
  }

  // 5: rel_image agrees with composition against a one-point source.
  {
    GreySet a = random_grey_set(rng, cx, 8);
    GreyRelation arel(Carrier{"pt"}, cx, a.values);
    GreyRelation composed = rel_compose(r, arel);
    GreySet img = rel_image(r, a);
    bool ok = true;
    for (size_t y = 0; y < cy.size(); ++y) ok = ok && composed.at(0, static_cast<int>(y)) == img.values[y];
    if (!ok) {
      out.laws[5].pass = false;
      out.laws[5].witness = {{"A", grey_set_to_json(a)}, {"R", relation_witness(r)}};
    }
  }

  // 6: the sum metric on a product is the sum of the pullbacks.
  {
    Pseudometric dx = random_pseudometric(rng, cx, 4);
    Pseudometric dy = random_pseudometric(rng, cy, 4);
    GreyRelation dxy = product_sum_relation(dx.rel, dy.rel);
    size_t nx = cx.size(), ny = cy.size(), np = nx * ny;
    Carrier sq;
    for (size_t i = 0; i < np; ++i)
      for (size_t j = 0; j < np; ++j) sq.push_back(product_point_name(dxy.source[i], dxy.source[j]));
    GreySet flat(sq, dxy.values);
    Carrier xsq;
    for (size_t i = 0; i < nx; ++i)
      for (size_t k = 0; k < nx; ++k) xsq.push_back(product_point_name(cx[i], cx[k]));
    Carrier ysq;
    for (size_t j = 0; j < ny; ++j)
      for (size_t l = 0; l < ny; ++l) ysq.push_back(product_point_name(cy[j], cy[l]));
    std::vector<int> m1(np * np), m2(np * np);
    for (size_t i = 0; i < nx; ++i)
      for (size_t j = 0; j < ny; ++j)
        for (size_t k = 0; k < nx; ++k)
          for (size_t l = 0; l < ny; ++l) {
            size_t q = (i * ny + j) * np + (k * ny + l);
            m1[q] = static_cast<int>(i * nx + k);
            m2[q] = static_cast<int>(j * ny + l);
          }
    GreySet pb1 = map_preimage(PointMap(sq, xsq, m1), GreySet(xsq, dx.rel.values));
    GreySet pb2 = map_preimage(PointMap(sq, ysq, m2), GreySet(ysq, dy.rel.values));
    if (grey_add(pb1, pb2) != flat) {
      out.laws[6].pass = false;
      out.laws[6].witness = {{"dx", relation_witness(dx.rel)}, {"dy", relation_witness(dy.rel)}};
    }
  }

  // 7: metric quotients are strict and the projection preserves distances.
  {
    Pseudometric d = random_pseudometric(rng, cx, 8);
    MetricQuotient q = metric_quotient(d);
    bool ok = validate_metric(q.space).ok;
    for (size_t i = 0; i < cx.size(); ++i)
      for (size_t j = 0; j < cx.size(); ++j)
        ok = ok && d.d(static_cast<int>(i), static_cast<int>(j)) ==
                       q.space.d(q.class_of[i], q.class_of[j]);
    if (!ok) {
      out.laws[7].pass = false;
      out.laws[7].witness = relation_witness(d.rel);
    }
  }

  // 8: image/preimage adjunction.
  {
    std::vector<int> fidx(cx.size());
    for (auto& v : fidx) v = static_cast<int>(rng.below(cy.size()));
    PointMap f(cx, cy, fidx);
    GreySet a = random_grey_set(rng, cx, 8);
    GreySet b = random_grey_set(rng, cy, 8);
    auto leq = [](const GreySet& u, const GreySet& v) {  // u below v in the reversed order
      for (size_t i = 0; i < u.size(); ++i)
        if (u.values[i] < v.values[i]) return false;
      return true;
    };
    bool lhs = leq(map_image(f, a), b);
    bool rhs = leq(a, map_preimage(f, b));
    GreySet back = map_preimage(f, map_image(f, a));
    bool unit_ok = true;
    for (size_t i = 0; i < a.size(); ++i) unit_ok = unit_ok && back.values[i] <= a.values[i];
    if (lhs != rhs || !unit_ok) {
      out.laws[8].pass = false;
      out.laws[8].witness = {{"A", grey_set_to_json(a)}, {"B", grey_set_to_json(b)}};
    }
  }

  // 9: truncated arithmetic laws.
  {
    Rational01 ra = rng.rational(8), rb = rng.rational(8), rc = rng.rational(8);
    bool ok = ra.trunc_add(rb) == rb.trunc_add(ra);
    ok = ok && ra.trunc_add(rb).trunc_add(rc) == ra.trunc_add(rb.trunc_add(rc));
    ok = ok && ra.trunc_add(Rational01::zero()) == ra;
    ok = ok && ra.trunc_add(rb).trunc_sub(rb) <= ra;
    bool fits = Rational01::one().trunc_sub(rb) >= ra;  // r + s <= 1
    if (fits) ok = ok && ra.trunc_add(rb).trunc_sub(rb) == ra;
    if (!ok) {
      out.laws[9].pass = false;
      out.laws[9].witness = {{"r", ra.str()}, {"s", rb.str()}, {"t", rc.str()}};
    }
  }
  return out;
}

// ---- finmetric ---------------------------------------------------------------

bool brute_force_isometric(const FinMetricSpace& x, const FinMetricSpace& y) {
  if (x.size() != y.size()) return false;
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (size_t i = 0; i < x.size() && ok; ++i)
      for (size_t j = 0; j < x.size() && ok; ++j)
        ok = x.d(static_cast<int>(i), static_cast<int>(j)) ==
             y.d(perm[i], perm[j]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

InstanceOutcome finmetric_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(4);
  FinMetricSpace x = random_metric_space(rng, 5, 6);
  FinMetricSpace y;
  if (rng.chance(1, 2)) {
    // A shuffled isometric copy.
    std::vector<int> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<size_t>(rng.below(i))]);
    std::vector<Rational01> table(x.size() * x.size());
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < x.size(); ++j)
        table[static_cast<size_t>(perm[i]) * x.size() + static_cast<size_t>(perm[j])] =
            x.d(static_cast<int>(i), static_cast<int>(j));
    y = FinMetricSpace(make_carrier("q", static_cast<int>(x.size())), std::move(table));
  } else {
    y = random_metric_space(rng, 5, 6);
  }

  // 0: search agrees with brute force, and results are genuine isometries.
  {
    auto found = find_isometry(x, y);
    bool expected = brute_force_isometric(x, y);
    bool ok = found.has_value() == expected;
    if (found) {
      for (auto [i, j] : found->pairs)
        for (auto [k, l] : found->pairs) ok = ok && x.d(i, k) == y.d(j, l);
    }
    if (!ok) {
      out.laws[0].pass = false;
      out.laws[0].witness = {{"x", metric_to_json(x)}, {"y", metric_to_json(y)}};
    }
  }
  // 1: symmetry, and inverse composition is the identity.
  {
    auto fwd = find_isometry(x, y);
    auto bwd = find_isometry(y, x);
    bool ok = fwd.has_value() == bwd.has_value();
    if (fwd && bwd) {
      std::vector<int> fmap(x.size()), bmap(y.size());
      for (auto [i, j] : fwd->pairs) fmap[static_cast<size_t>(i)] = j;
      for (auto [j, i] : bwd->pairs) bmap[static_cast<size_t>(j)] = i;
      // fwd composed with a (possibly different) inverse is still a bijection;
      // composing fwd with its own inverse pairing gives the identity.
      for (auto [i, j] : fwd->pairs) {
        std::vector<std::pair<int, int>> seeded{{j, i}};
        (void)seeded;
      }
      std::vector<int> inv(y.size(), -1);
      for (auto [i, j] : fwd->pairs) inv[static_cast<size_t>(j)] = i;
      for (size_t i = 0; i < x.size(); ++i) ok = ok && inv[static_cast<size_t>(fmap[i])] == static_cast<int>(i);
    }
    if (!ok) {
      out.laws[1].pass = false;
      out.laws[1].witness = {{"x", metric_to_json(x)}, {"y", metric_to_json(y)}};
    }
  }
  // 2: Hausdorff distance is a pseudometric on nonempty subsets.
  {
    FinMetricSpace z = random_metric_space(rng, 4, 6);
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 1; mask < (1u << z.size()); ++mask) {
      std::vector<int> s;
      for (size_t i = 0; i < z.size(); ++i)
        if (mask & (1u << i)) s.push_back(static_cast<int>(i));
      subsets.push_back(std::move(s));
    }
    bool ok = true;
    for (const auto& a : subsets) {
      ok = ok && hausdorff_distance(z, a, a).is_zero();
      for (const auto& b : subsets) {
        ok = ok && hausdorff_distance(z, a, b) == hausdorff_distance(z, b, a);
        for (const auto& c : subsets)
          ok = ok && hausdorff_distance(z, a, c) <=
                         hausdorff_distance(z, a, b).trunc_add(hausdorff_distance(z, b, c));
      }
    }
    if (!ok) {
      out.laws[2].pass = false;
      out.laws[2].witness = metric_to_json(z);
    }
  }
  // 3: a singleton factor is isometrically absorbed by sum products.
  {
    FinMetricSpace one = FinMetricSpace::singleton("pt");
    FinMetricSpace prod = sum_product(one, x);
    bool ok = find_isometry(prod, x).has_value();
    if (!ok) {
      out.laws[3].pass = false;
      out.laws[3].witness = metric_to_json(x);
    }
  }
  return out;
}

// ---- katetov -----------------------------------------------------------------

InstanceOutcome katetov_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(7);
  std::int64_t q = rng.range(1, 4);

  // 0: enriched Yoneda, exactly.
  {
    FinMetricSpace x = random_metric_space(rng, 5, q);
    bool ok = true;
    for (const auto& u : enumerate_katetov(x, q))
      for (size_t p = 0; p < x.size(); ++p)
        ok = ok && katetov_distance(delta_embed(x, static_cast<int>(p)), u) == u[p];
    if (!ok) {
      out.laws[0].pass = false;
      out.laws[0].witness = metric_to_json(x);
    }
  }
  // 1: finite-support density bound against twice the Hausdorff distance.
  {
    FinMetricSpace z = random_metric_space(rng, 6, rng.range(1, 3));
    std::vector<int> xs, ys;
    for (size_t i = 0; i < z.size(); ++i) {
      if (rng.chance(1, 2) && xs.size() < 3) xs.push_back(static_cast<int>(i));
      if (rng.chance(1, 2) && ys.size() < 3) ys.push_back(static_cast<int>(i));
    }
    if (xs.empty()) xs.push_back(0);
    if (ys.empty()) ys.push_back(static_cast<int>(z.size()) - 1);
    Rational01 bound = hausdorff_distance(z, xs, ys);
    bound = bound.trunc_add(bound);
    std::int64_t zq = 1;
    for (size_t i = 0; i < z.size(); ++i)
      for (size_t j = 0; j < z.size(); ++j) zq = std::lcm(zq, z.d(static_cast<int>(i), static_cast<int>(j)).den());
    bool ok = true;
    for (const auto& u : enumerate_katetov(subspace(z, xs), zq)) {
      std::vector<Rational01> uhat = extend_support(z, xs, u);
      std::vector<Rational01> v;
      for (int yp : ys) v.push_back(uhat[static_cast<size_t>(yp)]);
      std::vector<Rational01> vhat = extend_support(z, ys, v);
      ok = ok && katetov_distance(uhat, vhat) <= bound;
    }
    if (!ok) {
      out.laws[1].pass = false;
      out.laws[1].witness = {{"z", metric_to_json(z)}, {"x", xs}, {"y", ys}};
    }
  }
  // 2: functoriality of the Katetov extension along Lipschitz maps.
  {
    FinMetricSpace x = random_metric_space(rng, 3, q);
    FinMetricSpace y = random_metric_space(rng, 3, q);
    FinMetricSpace z = random_metric_space(rng, 3, q);
    auto random_lipschitz = [&](const FinMetricSpace& a, const FinMetricSpace& b) {
      for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<int> f(a.size());
        for (auto& v : f) v = static_cast<int>(rng.below(b.size()));
        bool lip = true;
        for (size_t i = 0; i < a.size() && lip; ++i)
          for (size_t j = 0; j < a.size() && lip; ++j)
            lip = b.d(f[i], f[j]) <= a.d(static_cast<int>(i), static_cast<int>(j));
        if (lip) return f;
      }
      return std::vector<int>(a.size(), 0);  // constant maps are always Lipschitz
    };
    std::vector<int> f = random_lipschitz(x, y);
    std::vector<int> gmap = random_lipschitz(y, z);
    std::vector<int> gf(x.size());
    for (size_t i = 0; i < x.size(); ++i) gf[i] = gmap[static_cast<size_t>(f[i])];
    std::vector<int> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    bool ok = true;
    int checked = 0;
    for (const auto& u : enumerate_katetov(x, q)) {
      if (++checked > 24) break;
      ok = ok && katetov_map(x, z, gf, u) == katetov_map(y, z, gmap, katetov_map(x, y, f, u));
      ok = ok && katetov_map(x, x, idx, u) == u;
    }
    if (!ok) {
      out.laws[2].pass = false;
      out.laws[2].witness = {{"x", metric_to_json(x)}, {"y", metric_to_json(y)}, {"z", metric_to_json(z)}};
    }
  }
  // 3..6 share one tower.
  {
    std::int64_t tq = rng.range(1, 2);
    FinMetricSpace seed_space = random_metric_space(rng, 2, tq);
    int depth = rng.range(1, 2);
    UrysohnTower t1 = urysohn_approx(seed_space, tq, depth, 4096);
    UrysohnTower t2 = urysohn_approx(seed_space, tq, depth, 4096);
    bool det = t1.space == t2.space && t1.level_sizes == t2.level_sizes;
    bool ext = t1.complete;
    for (int n = 0; n < t1.depth_built() && ext; ++n) ext = extension_property_check(t1, n).ok;
    out.laws[3].pass = det && ext;
    if (!out.laws[3].pass) out.laws[3].witness = metric_to_json(seed_space);
    out.laws[3].stats = {{"points", t1.space.size()}};

    // 4: transport along a permuted seed.
    {
      std::vector<int> perm(seed_space.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::reverse(perm.begin(), perm.end());
      std::vector<Rational01> table(seed_space.size() * seed_space.size());
      for (size_t i = 0; i < seed_space.size(); ++i)
        for (size_t j = 0; j < seed_space.size(); ++j)
          table[static_cast<size_t>(perm[i]) * seed_space.size() + static_cast<size_t>(perm[j])] =
              seed_space.d(static_cast<int>(i), static_cast<int>(j));
      FinMetricSpace seed2(make_carrier("s", static_cast<int>(seed_space.size())), std::move(table));
      UrysohnTower t3 = urysohn_approx(seed2, tq, depth, 4096);
      bool ok = true;
      try {
        TowerMap tm = tower_map(t1, t3, perm);
        ok = tm.unique;
        for (size_t lvl = 0; lvl + 1 < tm.level_maps.size(); ++lvl)
          for (size_t i = 0; i < tm.level_maps[lvl].size(); ++i)
            ok = ok && tm.level_maps[lvl][i] == tm.level_maps[lvl + 1][i];
        ok = ok && find_isometry(t1.space, t3.space).has_value();
      } catch (const Error&) {
        ok = false;
      }
      out.laws[4].pass = ok;
      if (!ok) out.laws[4].witness = metric_to_json(seed_space);
    }
    // 5: exact extension realizes enumerated functions over the penultimate level.
    {
      bool ok = true;
      std::vector<int> sections(t1.space.size());
      std::iota(sections.begin(), sections.end(), 0);
      size_t penult = t1.level_sizes[static_cast<size_t>(t1.depth_built() - (t1.depth_built() > 0 ? 1 : 0))];
      std::vector<int> pool(penult);
      std::iota(pool.begin(), pool.end(), 0);
      int tried = 0;
      for (size_t a = 0; a < pool.size() && tried < 6; ++a)
        for (size_t b = a; b < pool.size() && tried < 6; ++b) {
          std::vector<int> f = a == b ? std::vector<int>{pool[a]} : std::vector<int>{pool[a], pool[b]};
          for (const auto& u : enumerate_katetov(subspace(t1.space, f), tq)) {
            ++tried;
            ExactExtensionResult res = exact_extension(t1.space, sections, f, u);
            ok = ok && res.ok;
            if (res.ok)
              for (size_t i = 0; i < f.size(); ++i) ok = ok && t1.space.d(res.point, f[i]) == u[i];
            if (tried >= 6) break;
          }
        }
      out.laws[5].pass = ok;
      if (!ok) out.laws[5].witness = metric_to_json(t1.space);
    }
    // 6: one-point extensions validate; realized functions are flagged.
    {
      bool ok = true;
      FinMetricSpace x = t1.level(0);
      auto fns = enumerate_katetov(x, tq);
      for (size_t i = 0; i < fns.size() && i < 8; ++i) {
        OnePointExtension ext1 = one_point_extension(x, fns[i], "new");
        ok = ok && validate_metric(ext1.space).ok;
      }
      for (size_t p = 0; p < x.size(); ++p) {
        OnePointExtension ext2 = one_point_extension(x, delta_embed(x, static_cast<int>(p)), "new");
        ok = ok && ext2.already_realized && ext2.realizing_point == static_cast<int>(p);
      }
      out.laws[6].pass = ok;
      if (!ok) out.laws[6].witness = metric_to_json(x);
    }
  }
  return out;
}

// ---- yoneda-discrete -----------------------------------------------------------

InstanceOutcome yoneda_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(2);
  FinGroupoid g = random_groupoid(rng, 12);
  std::vector<Subgroupoid> subs;
  for (size_t x = 0; x < g.object_count(); ++x) subs.push_back(Subgroupoid{{g.unit[x]}});
  if (rng.chance(1, 2)) {
    Subgroupoid units;
    units.morphisms = g.unit;
    std::sort(units.morphisms.begin(), units.morphisms.end());
    subs.push_back(units);
  }
  if (rng.chance(1, 2)) subs.push_back(random_subgroupoid(g, rng));
  // Dedupe.
  std::vector<Subgroupoid> uniq;
  for (auto& s : subs) {
    bool seen = false;
    for (const auto& o : uniq) seen = seen || o.morphisms == s.morphisms;
    if (!seen) uniq.push_back(std::move(s));
  }
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& s : uniq) sections.push_back(default_sections(g, s));
  CanonicalStructure cs = canonical_structure(g, uniq, sections);
  EtaReport rep = verify_eta_iso(cs);
  out.laws[0].pass = rep.ok;
  if (!rep.ok) out.laws[0].witness = {{"failure", rep.failure}, {"groupoid", groupoid_to_json(g)}};
  size_t total = 0;
  for (auto& [x, y, gh, iso] : rep.hom_counts) total += iso;
  out.laws[0].stats = {{"iso_total", total}, {"objects", g.object_count()}, {"morphisms", g.size()}};

  // Planted incoherent families are rejected.
  {
    bool ok = true;
    bool found_case = false;
    for (size_t x = 0; x < g.object_count() && !found_case; ++x)
      for (size_t y = 0; y < g.object_count() && !found_case; ++y) {
        auto fams = enumerate_coherent_families(cs, static_cast<int>(x), static_cast<int>(y));
        if (fams.empty()) continue;
        for (int u = 0; u < cs.sort_count() && !found_case; ++u) {
          if (fams[0][static_cast<size_t>(u)] < 0) continue;
          for (int cls : cs.fiber_classes[static_cast<size_t>(u)][y]) {
            if (cls == fams[0][static_cast<size_t>(u)]) continue;
            CosetFamily broken = fams[0];
            broken[static_cast<size_t>(u)] = cls;
            if (family_coherent(cs, static_cast<int>(x), broken)) continue;
            found_case = true;
            try {
              (void)yoneda_psi(cs, static_cast<int>(x), static_cast<int>(y), broken);
              ok = false;  // should have thrown
            } catch (const Error&) {
            }
            break;
          }
        }
      }
    out.laws[1].pass = ok;
    if (!ok) out.laws[1].witness = groupoid_to_json(g);
  }
  return out;
}

// ---- uniformize ----------------------------------------------------------------

InstanceOutcome uniformize_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(3);
  DiscreteStructureFamily m = random_family(rng, 3, 4);
  int k = rng.range(1, 2);
  DiscreteStructureFamily mk = add_constants(m, k);
  bool ok = true;
  for (size_t x = 0; x < m.base.size(); ++x)
    for (size_t y = 0; y < m.base.size(); ++y)
      ok = ok && constants_preserve_isos(m, mk, k, static_cast<int>(x), static_cast<int>(y));
  out.laws[0].pass = ok;
  if (!ok) out.laws[0].witness = family_to_json(m);

  {
    LogicActionFunctor f = uniformize(m, UniformizeMode::plain, 1);
    UniformizeVerification v = verify_uniformize(m, f);
    out.laws[1].pass = v.full && v.faithful && v.orbit_reduction_injective;
    if (!out.laws[1].pass) out.laws[1].witness = {{"family", family_to_json(m)}, {"witness", v.witness}};
    out.laws[1].stats = {{"universe", f.universe}};
  }
  {
    LogicActionFunctor f = uniformize(m, UniformizeMode::injective_on_objects, 2);
    UniformizeVerification v = verify_uniformize(m, f);
    bool pass = v.full && v.faithful && v.injective_on_objects && v.orbit_reduction_injective;
    for (size_t x = 0; x < m.base.size(); ++x)
      pass = pass && decode_object(f, f.objects[x]) == static_cast<int>(x);
    out.laws[2].pass = pass;
    if (!pass) out.laws[2].witness = {{"family", family_to_json(m)}, {"witness", v.witness}};
  }
  return out;
}

// ---- birkhoff -------------------------------------------------------------------

GreyMorphismSet random_grey_morphism_set(Rng& rng, const FinGroupoid& g, std::int64_t den) {
  GreyMorphismSet a(g.size());
  for (auto& v : a) v = rng.rational(den);
  return a;
}

InstanceOutcome birkhoff_instance(std::uint64_t seed, bool mutate) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(5);
  FinGroupoid g = random_groupoid(rng, 10);

  // 0: convolution laws (associativity, unit, inversion), mutation hook here.
  {
    GreyMorphismSet a = random_grey_morphism_set(rng, g, 4);
    GreyMorphismSet b = random_grey_morphism_set(rng, g, 4);
    GreyMorphismSet c = random_grey_morphism_set(rng, g, 4);
    GreyMorphismSet lhs = grey_conv(g, grey_conv(g, a, b), c);
    if (mutate && !lhs.empty()) lhs[0] = lhs[0].is_one() ? Rational01(1, 2) : Rational01::one();
    GreyMorphismSet rhs = grey_conv(g, a, grey_conv(g, b, c));
    bool ok = lhs == rhs;
    std::vector<int> units = g.unit;
    GreyMorphismSet id = grey_indicator(g, units);
    ok = ok && grey_conv(g, a, id) == a && grey_conv(g, id, a) == a;
    ok = ok && grey_inv(g, grey_conv(g, a, b)) == grey_conv(g, grey_inv(g, b), grey_inv(g, a));
    if (!ok) {
      // Shrink to a witness morphism with one of its factorizations.
      int bad = -1;
      for (size_t m = 0; m < g.size(); ++m)
        if (lhs[m] != rhs[m]) {
          bad = static_cast<int>(m);
          break;
        }
      json w = {{"morphism", bad >= 0 ? g.morphisms[static_cast<size_t>(bad)] : "?"}};
      if (bad >= 0)
        for (size_t h = 0; h < g.size(); ++h)
          for (size_t k2 = 0; k2 < g.size(); ++k2)
            if (g.composable(static_cast<int>(h), static_cast<int>(k2)) &&
                g.mul(static_cast<int>(h), static_cast<int>(k2)) == bad) {
              w["factorization"] = {g.morphisms[h], g.morphisms[k2]};
              h = g.size();
              break;
            }
      out.laws[0].pass = false;
      out.laws[0].witness = w;
    }
  }
  // 1: closure equals the brute-force bounded join of convolution powers.
  {
    GreyMorphismSet a(g.size(), Rational01::one());
    for (size_t x = 0; x < g.object_count(); ++x) a[static_cast<size_t>(g.unit[x])] = Rational01::zero();
    for (size_t m = 0; m < g.size(); ++m)
      if (!g.is_unit(static_cast<int>(m))) a[m] = rng.rational(4);
    GreyNorm closure = grey_closure(g, a);
    GreyMorphismSet b(g.size());
    for (size_t m = 0; m < g.size(); ++m)
      b[m] = rat_min(a[m], a[static_cast<size_t>(g.inv(static_cast<int>(m)))]);
    GreyMorphismSet acc = b, power = b;
    for (size_t n = 2; n <= g.size() + 1; ++n) {
      power = grey_conv(g, power, b);
      for (size_t m = 0; m < g.size(); ++m) acc[m] = rat_min(acc[m], power[m]);
    }
    if (acc != closure.values) {
      out.laws[1].pass = false;
      out.laws[1].witness = norm_to_json(g, a, "");
    }
  }
  // 2: norm <-> left-invariant pseudometric round trips.
  {
    GreyNorm u = random_norm(g, rng, 4, rng.chance(1, 2));
    LeftInvariantMetric d = norm_to_metric(g, u);
    bool ok = is_left_invariant(g, d);
    GreyNorm back = metric_to_norm(g, u.unit_objects(g), d);
    ok = ok && back.values == u.values;
    LeftInvariantMetric d2 = norm_to_metric(g, back);
    ok = ok && d2.rel == d.rel && d2.domain == d.domain;
    if (!ok) {
      out.laws[2].pass = false;
      out.laws[2].witness = norm_to_json(g, u.values, "");
    }
  }
  // 3: synthesized filtrations certify Birkhoff-Kakutani.
  GreyMorphismSet target(g.size());
  Filtration filt;
  {
    std::vector<int> units;
    for (size_t x = 0; x < g.object_count(); ++x)
      if (rng.chance(2, 3) || units.empty()) units.push_back(static_cast<int>(x));
    for (size_t m = 0; m < g.size(); ++m) target[m] = Rational01(static_cast<std::int64_t>(rng.below(5)), 8);
    for (int x : units) target[static_cast<size_t>(g.unit[static_cast<size_t>(x)])] = Rational01::zero();
    filt = synthesize_filtration(g, target, units, rng.range(1, 3));
    BirkhoffResult bk = birkhoff_kakutani(g, filt, &target);
    bool ok = bk.cert.is_norm && bk.cert.unit_set_ok && bk.cert.chaining_ok && bk.cert.target_dominated;
    out.laws[3].pass = ok;
    if (!ok) out.laws[3].witness = {{"target", norm_to_json(g, target, "")}};
  }
  // 4: chaining bound against the exhaustive factorization oracle.
  {
    BirkhoffResult bk = birkhoff_kakutani(g, filt, nullptr);
    const GreyMorphismSet& vp = bk.vprime;
    bool ok = true;
    struct Chain {
      int product;
      Rational01 sum;
    };
    std::vector<Chain> chains;
    for (size_t m = 0; m < g.size(); ++m) chains.push_back({static_cast<int>(m), vp[m]});
    for (int len = 2; len <= 4 && ok; ++len) {
      std::vector<Chain> next;
      for (const auto& ch : chains)
        for (size_t m = 0; m < g.size(); ++m) {
          if (!g.composable(ch.product, static_cast<int>(m))) continue;
          next.push_back({g.mul(ch.product, static_cast<int>(m)), ch.sum.trunc_add(vp[m])});
        }
      for (const auto& ch : next)
        ok = ok && vp[static_cast<size_t>(ch.product)] <= ch.sum.trunc_add(ch.sum);
      chains = std::move(next);
    }
    out.laws[4].pass = ok;
    if (!ok) out.laws[4].witness = norm_to_json(g, vp, "");
  }
  return out;
}

// ---- sandwich --------------------------------------------------------------------

InstanceOutcome sandwich_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(1);
  FinGroupoid g = random_groupoid(rng, 10);
  GreyNorm v = random_norm(g, rng, 4, true);
  std::vector<int> vunits = v.unit_objects(g);
  std::vector<int> domain;
  for (size_t m = 0; m < g.size(); ++m)
    if (std::find(vunits.begin(), vunits.end(), g.src[m]) != vunits.end())
      domain.push_back(static_cast<int>(m));
  if (domain.empty()) {
    out.laws[0].pass = true;
    return out;
  }
  std::vector<int> s;
  if (rng.chance(1, 3)) {
    for (int x : vunits) s.push_back(g.unit[static_cast<size_t>(x)]);
  } else {
    s.push_back(domain[static_cast<size_t>(rng.below(domain.size()))]);
  }
  Rational01 rs = Rational01::zero();
  for (int a : s)
    for (int b : s) {
      if (g.tgt[static_cast<size_t>(a)] != g.tgt[static_cast<size_t>(b)]) continue;
      rs = rat_max(rs, v.at(g.mul(g.inv(a), b)));
    }
  if (rs.is_one()) {
    out.laws[0].pass = true;  // no admissible smallness radius; vacuous instance
    return out;
  }
  Rational01 r = rs.trunc_add(Rational01::one().trunc_sub(rs).half());
  // A norm dominating S . V . S^- via the halved-target synthesis.
  GreyMorphismSet t = grey_conv(g, grey_conv(g, grey_indicator(g, s), v.values),
                                grey_inv(g, grey_indicator(g, s)));
  GreyMorphismSet half_t(t.size());
  for (size_t m = 0; m < t.size(); ++m) half_t[m] = t[m].half();
  std::vector<int> tunits;
  for (size_t x = 0; x < g.object_count(); ++x)
    if (t[static_cast<size_t>(g.unit[x])].is_zero()) tunits.push_back(static_cast<int>(x));
  Filtration filt = synthesize_filtration(g, half_t, tunits, 2);
  BirkhoffResult bk = birkhoff_kakutani(g, filt, &half_t);
  GreyNorm u = norm_sum(g, bk.w, bk.w);
  SandwichResult res = right_mult_grey_relation(g, u, v, s, r);
  bool ok = res.ok && res.invariant_ok && res.sandwich_ok && bk.cert.target_dominated;
  out.laws[0].pass = ok;
  if (!ok)
    out.laws[0].witness = {{"precondition", res.failed_precondition},
                           {"invariant_ok", res.invariant_ok},
                           {"sandwich_ok", res.sandwich_ok},
                           {"groupoid", groupoid_to_json(g)}};
  return out;
}

// ---- crisp degeneration -------------------------------------------------------------

InstanceOutcome crisp_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(6);
  FinGroupoid g = random_groupoid(rng, 10);
  auto random_subset = [&](unsigned num, unsigned den) {
    std::vector<int> s;
    for (size_t m = 0; m < g.size(); ++m)
      if (rng.chance(num, den)) s.push_back(static_cast<int>(m));
    if (s.empty()) s.push_back(static_cast<int>(rng.below(g.size())));
    return s;
  };
  // 0: convolution of indicators is the indicator of the set product.
  {
    std::vector<int> a = random_subset(1, 2), b = random_subset(1, 2);
    bool ok = grey_conv(g, grey_indicator(g, a), grey_indicator(g, b)) ==
              grey_indicator(g, set_product(g, a, b));
    ok = ok && grey_inv(g, grey_indicator(g, a)) == grey_indicator(g, set_inverse(g, a));
    out.laws[0].pass = ok;
  }
  // 1: closure of an indicator is the indicator of the generated subgroupoid.
  {
    std::vector<int> a = random_subset(1, 3);
    std::vector<int> a2 = a;
    for (int m : a) {
      a2.push_back(g.unit[static_cast<size_t>(g.src[static_cast<size_t>(m)])]);
      a2.push_back(g.unit[static_cast<size_t>(g.tgt[static_cast<size_t>(m)])]);
    }
    std::sort(a2.begin(), a2.end());
    a2.erase(std::unique(a2.begin(), a2.end()), a2.end());
    GreyNorm cl = grey_closure(g, grey_indicator(g, a2));
    Subgroupoid gen = generated_subgroupoid(g, a);
    out.laws[1].pass = cl.values == grey_indicator(g, gen.morphisms);
    if (!out.laws[1].pass) out.laws[1].witness = groupoid_to_json(g);
  }
  // 2: crisp coset metric spaces match the discrete coset spaces.
  Subgroupoid sub = random_subgroupoid(g, rng);
  {
    GreyNorm crisp = GreyNorm::crisp(g, sub);
    CosetMetricSpace cms = coset_metric_space(g, crisp);
    CosetSpace cs = coset_space(g, sub);
    bool ok = cms.space.size() == cs.classes.size();
    std::vector<int> align(cms.space.size(), -1);  // cms point -> cs class
    for (size_t m = 0; m < g.size(); ++m) {
      int p = cms.class_of[m], c = cs.class_of[m];
      ok = ok && ((p < 0) == (c < 0));
      if (p >= 0 && c >= 0) {
        if (align[static_cast<size_t>(p)] < 0) align[static_cast<size_t>(p)] = c;
        ok = ok && align[static_cast<size_t>(p)] == c;
      }
    }
    for (size_t p = 0; p < cms.space.size() && ok; ++p) {
      ok = cms.tau[p] == cs.tau[static_cast<size_t>(align[p])];
      for (size_t q = 0; q < cms.space.size() && ok; ++q)
        if (p != q) ok = cms.space.d(static_cast<int>(p), static_cast<int>(q)).is_one();
    }
    for (size_t m = 0; m < g.size() && ok; ++m)
      for (size_t p = 0; p < cms.space.size() && ok; ++p) {
        int mp = cms.left_act[m][p];
        int mc = cs.left_act[m][static_cast<size_t>(align[p])];
        ok = (mp < 0) == (mc < 0) && (mp < 0 || align[static_cast<size_t>(mp)] == mc);
      }
    out.laws[2].pass = ok;
    if (!ok) out.laws[2].witness = groupoid_to_json(g);
  }
  // 3: crisp sandwich relations are the graphs of the discrete right multiplication.
  {
    CosetSpace cs = coset_space(g, sub);
    bool ok = true;
    if (!cs.classes.empty()) {
      std::vector<int> b = cs.classes[static_cast<size_t>(rng.below(cs.classes.size()))];
      std::vector<int> usub = set_product(g, b, set_inverse(g, b));
      Subgroupoid u{usub};
      RightMultResult rm = right_mult_map(g, u, sub, b);
      ok = rm.ok;
      if (ok) {
        SandwichResult res =
            right_mult_grey_relation(g, GreyNorm::crisp(g, u), GreyNorm::crisp(g, sub), b, Rational01(1, 2));
        ok = res.ok && res.invariant_ok && res.sandwich_ok;
        if (ok) {
          CosetMetricSpace cu = coset_metric_space(g, GreyNorm::crisp(g, u));
          CosetMetricSpace cv = coset_metric_space(g, GreyNorm::crisp(g, sub));
          CosetSpace du = coset_space(g, u);
          // Zero entries of the table are exactly the graph of the map.
          for (size_t m = 0; m < g.size(); ++m) {
            if (cu.class_of[m] < 0 || du.class_of[m] < 0) continue;
            for (size_t h = 0; h < g.size(); ++h) {
              if (cv.class_of[h] < 0 || cs.class_of[h] < 0) continue;
              if (g.tgt[m] != g.tgt[h]) continue;
              bool zero = res.table[static_cast<size_t>(cu.class_of[m]) * cv.space.size() +
                                    static_cast<size_t>(cv.class_of[h])]
                              .is_zero();
              bool mapped = rm.map[static_cast<size_t>(du.class_of[m])] == cs.class_of[h];
              ok = ok && zero == mapped;
            }
          }
        }
      }
    }
    out.laws[3].pass = ok;
    if (!ok) out.laws[3].witness = groupoid_to_json(g);
  }
  // 4: pointwise grey operations restrict to ordinary set operations.
  {
    Carrier c = make_carrier("x", rng.range(1, 5));
    std::vector<std::string> sa, sb;
    for (const auto& p : c) {
      if (rng.chance(1, 2)) sa.push_back(p);
      if (rng.chance(1, 2)) sb.push_back(p);
    }
    GreySet a = GreySet::zero_indicator(c, sa), b = GreySet::zero_indicator(c, sb);
    std::vector<std::string> uni, inter;
    for (const auto& p : c) {
      bool ia = std::find(sa.begin(), sa.end(), p) != sa.end();
      bool ib = std::find(sb.begin(), sb.end(), p) != sb.end();
      if (ia || ib) uni.push_back(p);
      if (ia && ib) inter.push_back(p);
    }
    bool ok = grey_union(a, b) == GreySet::zero_indicator(c, uni);
    ok = ok && grey_intersection(a, b) == GreySet::zero_indicator(c, inter);
    ok = ok && grey_add(a, b) == GreySet::zero_indicator(c, inter);
    ok = ok && sublevel(a, Rational01::one(), true) == sa;
    out.laws[4].pass = ok;
  }
  // 5: saturation under a crisp equivalence relation is the block saturation.
  {
    Carrier c = make_carrier("x", rng.range(1, 5));
    std::vector<int> block(c.size());
    for (auto& bidx : block) bidx = rng.range(0, 1);
    GreyRelation rel = GreyRelation::constant(c, c, Rational01::one());
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < c.size(); ++j)
        if (block[i] == block[j]) rel.at(static_cast<int>(i), static_cast<int>(j)) = Rational01::zero();
    Pseudometric d(rel);
    std::vector<std::string> sa;
    for (const auto& p : c)
      if (rng.chance(1, 2)) sa.push_back(p);
    GreySet a = GreySet::zero_indicator(c, sa);
    std::vector<std::string> saturated;
    for (size_t i = 0; i < c.size(); ++i) {
      bool hit = false;
      for (const auto& p : sa) hit = hit || block[static_cast<size_t>(carrier_index(c, p))] == block[i];
      if (hit) saturated.push_back(c[i]);
    }
    out.laws[5].pass = saturate(d, a) == GreySet::zero_indicator(c, saturated);
  }
  return out;
}

// ---- metric-yoneda -----------------------------------------------------------------

InstanceOutcome metric_yoneda_instance(std::uint64_t seed, bool) {
  Rng rng(seed);
  InstanceOutcome out;
  out.laws.resize(2);
  FinGroupoid g = random_groupoid(rng, 8);
  Subgroupoid units;
  units.morphisms = g.unit;
  std::sort(units.morphisms.begin(), units.morphisms.end());
  GreyNorm discrete_norm = GreyNorm::crisp(g, units);
  bool crisp_case = seed % 2 == 0;
  GreyNorm second =
      crisp_case ? GreyNorm::crisp(g, generated_subgroupoid(g, [&] {
                     std::vector<int> seeds = units.morphisms;
                     seeds.push_back(static_cast<int>(rng.below(g.size())));
                     return seeds;
                   }()))
                 : random_norm(g, rng, 2, true);
  // Per-object atom norms separate the objects, the way the unit-singleton
  // subgroupoids do in the discrete module.
  std::vector<GreyNorm> base{discrete_norm, second};
  for (size_t x = 0; x < g.object_count(); ++x)
    base.push_back(GreyNorm::crisp(g, Subgroupoid{{g.unit[x]}}));
  std::vector<GreyNorm> norms = close_under_sum(g, std::move(base));
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& n : norms) sections.push_back(default_metric_sections(g, n));
  MetricCanonicalStructure mc = metric_canonical_structure(g, norms, sections);
  MetricYonedaReport rep = metric_yoneda_check(mc);
  out.laws[0].pass = rep.ok && rep.separating_violations.empty();
  if (!out.laws[0].pass)
    out.laws[0].witness = {{"failure", rep.failure}, {"groupoid", groupoid_to_json(g)}};
  size_t total = 0;
  for (auto& [x, y, gh, iso] : rep.hom_counts) total += iso;
  out.laws[0].stats = {{"iso_total", total}, {"norms", norms.size()}};

  // Crisp norms reduce to the discrete Yoneda counts.
  if (crisp_case) {
    std::vector<Subgroupoid> subs;
    for (size_t x = 0; x < g.object_count(); ++x) subs.push_back(Subgroupoid{{g.unit[x]}});
    subs.push_back(units);
    for (const auto& n : norms) {
      Subgroupoid zs;
      for (size_t m = 0; m < g.size(); ++m)
        if (n.at(static_cast<int>(m)).is_zero()) zs.morphisms.push_back(static_cast<int>(m));
      bool seen = false;
      for (const auto& s : subs) seen = seen || s.morphisms == zs.morphisms;
      if (!seen) subs.push_back(std::move(zs));
    }
    std::vector<std::vector<std::vector<int>>> dsections;
    for (const auto& s : subs) dsections.push_back(default_sections(g, s));
    CanonicalStructure cs = canonical_structure(g, subs, dsections);
    EtaReport drep = verify_eta_iso(cs);
    bool ok = drep.ok;
    // Per-pair isomorphism counts agree bit for bit.
    for (auto& [x, y, gh, iso] : rep.hom_counts)
      for (auto& [dx, dy, dgh, diso] : drep.hom_counts)
        if (x == dx && y == dy) ok = ok && iso == diso && gh == dgh;
    out.laws[1].pass = ok;
    if (!ok) out.laws[1].witness = groupoid_to_json(g);
  }
  return out;
}

// ---- registry and runner --------------------------------------------------------

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> defs = {
      {"grey-algebra",
       {"compose-associativity", "diagonal-identity", "inverse-antihom", "sublevel-decomposition",
        "saturation", "rel-image-as-compose", "sum-metric-correspondence", "quotient-strict",
        "map-image-adjunction", "trunc-laws"},
       grey_algebra_instance},
      {"finmetric",
       {"isometry-vs-bruteforce", "isometry-symmetry", "hausdorff-pseudometric", "singleton-product"},
       finmetric_instance},
      {"katetov",
       {"enriched-yoneda", "density-bound", "functoriality", "tower-determinism", "tower-transport",
        "exact-extension", "one-point-extension"},
       katetov_instance},
      {"yoneda-discrete", {"eta-iso", "incoherent-rejected"}, yoneda_instance},
      {"uniformize", {"add-constants-isos", "full-faithful", "injective-on-objects"}, uniformize_instance},
      {"birkhoff",
       {"conv-laws", "closure-oracle", "norm-metric-roundtrip", "synthesize-certificates",
        "chaining-oracle"},
       birkhoff_instance},
      {"sandwich", {"sandwich-bounds"}, sandwich_instance},
      {"crisp-degeneration",
       {"conv-vs-product", "closure-vs-generated", "coset-crisp", "rightmult-crisp", "set-ops-crisp",
        "saturate-crisp"},
       crisp_instance},
      {"metric-yoneda", {"metric-eta-iso", "crisp-reduction"}, metric_yoneda_instance},
  };
  return defs;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.push_back(s.name);
  return out;
}

bool is_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return true;
  return false;
}

Report check_laws(const std::string& suite, const SuiteOptions& opts) {
  const SuiteDef* def = nullptr;
  for (const auto& s : suites())
    if (s.name == suite) def = &s;
  if (!def) throw Error("check_laws: unknown suite '" + suite + "'");
  Report rep;
  rep.command = "check-laws";
  rep.params = {{"suite", suite}, {"seed", opts.seed}, {"count", opts.count},
                {"mutation", opts.plant_mutation}};
  int count = std::max(opts.count, 1);
  std::vector<InstanceOutcome> results(static_cast<size_t>(count));
  std::atomic<int> cursor{0};
  int nthreads = std::min(pool_size(), count);
  auto work = [&] {
    for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) {
      try {
        results[static_cast<size_t>(i)] =
            def->run(Rng::derive(opts.seed, static_cast<std::uint64_t>(i)), opts.plant_mutation);
      } catch (const std::exception& e) {
        results[static_cast<size_t>(i)].error = e.what();
      }
    }
  };
  std::vector<std::thread> workers;
  for (int t = 1; t < nthreads; ++t) workers.emplace_back(work);
  work();
  for (auto& t : workers) t.join();

  for (size_t law = 0; law < def->laws.size(); ++law) {
    CheckResult cr;
    cr.name = def->laws[law];
    cr.pass = true;
    int failures = 0;
    json first_witness;
    json stats = json::array();
    for (int i = 0; i < count; ++i) {
      const auto& inst = results[static_cast<size_t>(i)];
      if (!inst.error.empty()) continue;
      if (law >= inst.laws.size()) continue;
      const LawResult& lr = inst.laws[law];
      if (!lr.stats.is_null()) stats.push_back(lr.stats);
      if (!lr.pass) {
        ++failures;
        if (first_witness.is_null()) first_witness = {{"instance", i}, {"witness", lr.witness}};
      }
    }
    cr.pass = failures == 0;
    cr.details = {{"instances", count}, {"failures", failures}};
    if (!first_witness.is_null()) cr.details["counterexample"] = first_witness;
    if (!stats.empty()) cr.details["stats"] = stats;
    rep.checks.push_back(std::move(cr));
  }
  {
    CheckResult cr;
    cr.name = "no-exception";
    int errored = 0;
    json first;
    for (int i = 0; i < count; ++i)
      if (!results[static_cast<size_t>(i)].error.empty()) {
        ++errored;
        if (first.is_null()) first = {{"instance", i}, {"error", results[static_cast<size_t>(i)].error}};
      }
    cr.pass = errored == 0;
    cr.details = {{"instances", count}, {"failures", errored}};
    if (!first.is_null()) cr.details["counterexample"] = first;
    rep.checks.push_back(std::move(cr));
  }
  return rep;
}

}  // namespace topogrey
