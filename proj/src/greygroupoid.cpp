#include "topogrey/greygroupoid.hpp"

#include <algorithm>
#include <set>

namespace topogrey {

GreyNormVerdict grey_norm_check(const FinGroupoid& g, const GreyMorphismSet& u) {
  GreyNormVerdict v;
  if (u.size() != g.size()) throw Error("grey norm: value table does not match morphisms");
  for (size_t m = 0; m < g.size(); ++m) {
    if (g.is_unit(static_cast<int>(m)) && !u[m].is_crisp()) {
      v.failed_axiom = "unital-crisp";
      v.witness = {static_cast<int>(m)};
      return v;
    }
    if (!u[m].is_one()) {
      int us = g.unit[static_cast<size_t>(g.src[m])];
      int ut = g.unit[static_cast<size_t>(g.tgt[m])];
      if (!u[static_cast<size_t>(us)].is_zero() || !u[static_cast<size_t>(ut)].is_zero()) {
        v.failed_axiom = "strict";
        v.witness = {static_cast<int>(m)};
        return v;
      }
    }
  }
  for (size_t m = 0; m < g.size(); ++m)
    if (u[m] != u[static_cast<size_t>(g.inv(static_cast<int>(m)))]) {
      v.failed_axiom = "symmetric";
      v.witness = {static_cast<int>(m)};
      return v;
    }
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t b = 0; b < g.size(); ++b) {
      if (!g.composable(static_cast<int>(a), static_cast<int>(b))) continue;
      if (u[a].trunc_add(u[b]) < u[static_cast<size_t>(g.mul(static_cast<int>(a), static_cast<int>(b)))]) {
        v.failed_axiom = "submultiplicative";
        v.witness = {static_cast<int>(a), static_cast<int>(b)};
        return v;
      }
    }
  v.ok = true;
  return v;
}

GreyNorm::GreyNorm(const FinGroupoid& g, GreyMorphismSet v) : values(std::move(v)) {
  GreyNormVerdict gv = grey_norm_check(g, values);
  if (!gv.ok) throw Error("grey norm: axiom '" + gv.failed_axiom + "' fails");
}

std::vector<int> GreyNorm::unit_objects(const FinGroupoid& g) const {
  std::vector<int> out;
  for (size_t x = 0; x < g.object_count(); ++x)
    if (values[static_cast<size_t>(g.unit[x])].is_zero()) out.push_back(static_cast<int>(x));
  return out;
}

bool GreyNorm::is_crisp() const {
  return std::all_of(values.begin(), values.end(), [](const Rational01& r) { return r.is_crisp(); });
}

GreyNorm GreyNorm::crisp(const FinGroupoid& g, const Subgroupoid& u) {
  if (!is_subgroupoid(g, u.morphisms)) throw Error("GreyNorm::crisp: not a subgroupoid");
  return GreyNorm(g, grey_indicator(g, u.morphisms));
}

GreyNorm norm_sum(const FinGroupoid& g, const GreyNorm& a, const GreyNorm& b) {
  GreyMorphismSet v(g.size());
  for (size_t m = 0; m < g.size(); ++m) v[m] = a.values[m].trunc_add(b.values[m]);
  return GreyNorm(g, std::move(v));
}

GreyMorphismSet grey_conv(const FinGroupoid& g, const GreyMorphismSet& a, const GreyMorphismSet& b) {
  if (a.size() != g.size() || b.size() != g.size()) throw Error("grey_conv: table size mismatch");
  GreyMorphismSet out(g.size(), Rational01::one());
  for (size_t h = 0; h < g.size(); ++h)
    for (size_t k = 0; k < g.size(); ++k) {
      if (!g.composable(static_cast<int>(h), static_cast<int>(k))) continue;
      size_t c = static_cast<size_t>(g.mul(static_cast<int>(h), static_cast<int>(k)));
      out[c] = rat_min(out[c], a[h].trunc_add(b[k]));
    }
  return out;
}

GreyMorphismSet grey_inv(const FinGroupoid& g, const GreyMorphismSet& a) {
  GreyMorphismSet out(g.size());
  for (size_t m = 0; m < g.size(); ++m) out[m] = a[static_cast<size_t>(g.inv(static_cast<int>(m)))];
  return out;
}

GreyMorphismSet grey_indicator(const FinGroupoid& g, const std::vector<int>& members) {
  GreyMorphismSet out(g.size(), Rational01::one());
  for (int m : members) out[static_cast<size_t>(m)] = Rational01::zero();
  return out;
}

bool is_strictly_unital(const FinGroupoid& g, const GreyMorphismSet& a, int* witness) {
  for (size_t m = 0; m < g.size(); ++m) {
    if (g.is_unit(static_cast<int>(m)) && !a[m].is_crisp()) {
      if (witness) *witness = static_cast<int>(m);
      return false;
    }
    if (!a[m].is_one()) {
      int us = g.unit[static_cast<size_t>(g.src[m])];
      int ut = g.unit[static_cast<size_t>(g.tgt[m])];
      if (!a[static_cast<size_t>(us)].is_zero() || !a[static_cast<size_t>(ut)].is_zero()) {
        if (witness) *witness = static_cast<int>(m);
        return false;
      }
    }
  }
  return true;
}

GreyNorm grey_closure(const FinGroupoid& g, const GreyMorphismSet& a) {
  int w = -1;
  if (!is_strictly_unital(g, a, &w))
    throw Error("grey_closure: input not strictly unital at morphism " +
                (w >= 0 ? g.morphisms[static_cast<size_t>(w)] : std::string("?")));
  GreyMorphismSet cur(g.size());
  for (size_t m = 0; m < g.size(); ++m)
    cur[m] = rat_min(a[m], a[static_cast<size_t>(g.inv(static_cast<int>(m)))]);
  // Min-plus relaxation to the fixpoint; paths of length > |G| never improve,
  // and each doubling round folds path lengths, so |G|+1 rounds suffice.
  for (size_t round = 0; round <= g.size(); ++round) {
    bool changed = false;
    for (size_t h = 0; h < g.size(); ++h)
      for (size_t k = 0; k < g.size(); ++k) {
        if (!g.composable(static_cast<int>(h), static_cast<int>(k))) continue;
        size_t c = static_cast<size_t>(g.mul(static_cast<int>(h), static_cast<int>(k)));
        Rational01 cand = cur[h].trunc_add(cur[k]);
        if (cand < cur[c]) {
          cur[c] = cand;
          changed = true;
        }
      }
    if (!changed) break;
  }
  return GreyNorm(g, std::move(cur));
}

LeftInvariantMetric norm_to_metric(const FinGroupoid& g, const GreyNorm& u) {
  LeftInvariantMetric out;
  std::vector<bool> unit_obj(g.object_count(), false);
  for (int x : u.unit_objects(g)) unit_obj[static_cast<size_t>(x)] = true;
  for (size_t m = 0; m < g.size(); ++m)
    if (unit_obj[static_cast<size_t>(g.src[m])]) out.domain.push_back(static_cast<int>(m));
  Carrier c;
  for (int m : out.domain) c.push_back(g.morphisms[static_cast<size_t>(m)]);
  out.rel = GreyRelation::constant(c, c, Rational01::one());
  for (size_t i = 0; i < out.domain.size(); ++i)
    for (size_t j = 0; j < out.domain.size(); ++j) {
      int gi = out.domain[i], gj = out.domain[j];
      if (g.tgt[static_cast<size_t>(gi)] != g.tgt[static_cast<size_t>(gj)]) continue;
      out.rel.at(static_cast<int>(i), static_cast<int>(j)) = u.at(g.mul(g.inv(gi), gj));
    }
  PseudometricVerdict pv = pseudometric_check(out.rel);
  if (!pv.ok) throw Error("norm_to_metric: d_U fails axiom " + pv.failed_axiom);
  return out;
}

bool is_left_invariant(const FinGroupoid& g, const LeftInvariantMetric& d) {
  std::vector<int> pos(g.size(), -1);
  for (size_t i = 0; i < d.domain.size(); ++i) pos[static_cast<size_t>(d.domain[i])] = static_cast<int>(i);
  for (size_t k = 0; k < g.size(); ++k)
    for (size_t i = 0; i < d.domain.size(); ++i)
      for (size_t j = 0; j < d.domain.size(); ++j) {
        int gi = d.domain[i], gj = d.domain[j];
        if (g.tgt[static_cast<size_t>(gi)] != g.tgt[static_cast<size_t>(gj)]) continue;
        if (g.src[static_cast<size_t>(static_cast<int>(k))] != g.tgt[static_cast<size_t>(gi)]) continue;
        int ki = g.mul(static_cast<int>(k), gi), kj = g.mul(static_cast<int>(k), gj);
        if (pos[static_cast<size_t>(ki)] < 0 || pos[static_cast<size_t>(kj)] < 0) return false;
        if (d.rel.at(pos[static_cast<size_t>(ki)], pos[static_cast<size_t>(kj)]) !=
            d.rel.at(static_cast<int>(i), static_cast<int>(j)))
          return false;
      }
  return true;
}

GreyNorm metric_to_norm(const FinGroupoid& g, const std::vector<int>& unit_objects,
                        const LeftInvariantMetric& d) {
  PseudometricVerdict pv = pseudometric_check(d.rel);
  if (!pv.ok) throw Error("metric_to_norm: not a pseudometric (" + pv.failed_axiom + ")");
  std::vector<int> pos(g.size(), -1);
  for (size_t i = 0; i < d.domain.size(); ++i) pos[static_cast<size_t>(d.domain[i])] = static_cast<int>(i);
  std::vector<bool> unit_obj(g.object_count(), false);
  for (int x : unit_objects) unit_obj[static_cast<size_t>(x)] = true;
  // The expected domain and the fiberwise encoding (cross-fiber pairs at 1).
  for (size_t m = 0; m < g.size(); ++m)
    if (unit_obj[static_cast<size_t>(g.src[m])] != (pos[m] >= 0))
      throw Error("metric_to_norm: domain does not match the unit objects");
  for (size_t i = 0; i < d.domain.size(); ++i)
    for (size_t j = 0; j < d.domain.size(); ++j)
      if (g.tgt[static_cast<size_t>(d.domain[i])] != g.tgt[static_cast<size_t>(d.domain[j])] &&
          !d.rel.at(static_cast<int>(i), static_cast<int>(j)).is_one())
        throw Error("metric_to_norm: cross-fiber distance must be 1");
  if (!is_left_invariant(g, d)) throw Error("metric_to_norm: metric is not left-invariant");
  GreyMorphismSet u(g.size(), Rational01::one());
  for (size_t m = 0; m < g.size(); ++m) {
    if (!unit_obj[static_cast<size_t>(g.src[m])] || !unit_obj[static_cast<size_t>(g.tgt[m])]) continue;
    int unit_m = g.unit[static_cast<size_t>(g.tgt[m])];
    u[m] = d.rel.at(pos[static_cast<size_t>(unit_m)], pos[m]);
  }
  return GreyNorm(g, std::move(u));
}

FiltrationVerdict filtration_check(const FinGroupoid& g, const Filtration& f) {
  FiltrationVerdict v;
  auto fail = [&](std::string what, int lvl, std::vector<int> w) {
    v.failed_invariant = std::move(what);
    v.level = lvl;
    v.witness = std::move(w);
    return v;
  };
  if (f.levels.empty()) return fail("descending", -1, {});
  std::vector<int> units0;
  for (size_t n = 0; n < f.levels.size(); ++n) {
    const auto& lv = f.levels[n];
    std::vector<int> units;
    for (int m : lv) {
      if (!std::binary_search(lv.begin(), lv.end(), g.inv(m))) return fail("symmetric", static_cast<int>(n), {m});
      if (!std::binary_search(lv.begin(), lv.end(), g.unit[static_cast<size_t>(g.src[static_cast<size_t>(m)])]) ||
          !std::binary_search(lv.begin(), lv.end(), g.unit[static_cast<size_t>(g.tgt[static_cast<size_t>(m)])]))
        return fail("unital", static_cast<int>(n), {m});
      if (g.is_unit(m)) units.push_back(m);
    }
    if (n == 0)
      units0 = units;
    else if (units != units0)
      return fail("units", static_cast<int>(n), {});
    if (n > 0 && !std::includes(f.levels[n - 1].begin(), f.levels[n - 1].end(), lv.begin(), lv.end()))
      return fail("descending", static_cast<int>(n), {});
  }
  for (size_t n = 0; n + 1 < f.levels.size(); ++n) {
    const auto& s = f.levels[n + 1];
    std::vector<int> triple = set_product(g, set_product(g, s, s), s);
    for (int m : triple)
      if (!std::binary_search(f.levels[n].begin(), f.levels[n].end(), m))
        return fail("triple", static_cast<int>(n + 1), {m});
  }
  v.ok = true;
  return v;
}

namespace {

// Largest symmetric unital subset of `allowed` whose units are exactly the
// units of V: morphisms with g, g^-1 allowed and both endpoints in V.
std::vector<int> largest_symmetric_unital(const FinGroupoid& g, const std::vector<bool>& allowed,
                                          const std::vector<bool>& unit_obj) {
  std::vector<int> out;
  for (size_t m = 0; m < g.size(); ++m) {
    if (!allowed[m] || !allowed[static_cast<size_t>(g.inv(static_cast<int>(m)))]) continue;
    if (!unit_obj[static_cast<size_t>(g.src[m])] || !unit_obj[static_cast<size_t>(g.tgt[m])]) continue;
    out.push_back(static_cast<int>(m));
  }
  return out;
}

}  // namespace

Filtration synthesize_filtration(const FinGroupoid& g, const GreyMorphismSet& target,
                                 const std::vector<int>& unit_objects, int depth) {
  if (target.size() != g.size()) throw Error("synthesize_filtration: target table size mismatch");
  std::vector<bool> unit_obj(g.object_count(), false);
  for (int x : unit_objects) unit_obj[static_cast<size_t>(x)] = true;
  for (int x : unit_objects)
    if (!target[static_cast<size_t>(g.unit[static_cast<size_t>(x)])].is_zero())
      throw Error("synthesize_filtration: unit objects must sit inside the target's zero set");
  Filtration f;
  std::vector<bool> allowed(g.size());
  for (size_t m = 0; m < g.size(); ++m) allowed[m] = target[m] < Rational01::one();
  f.levels.push_back(largest_symmetric_unital(g, allowed, unit_obj));
  for (int n = 0; n < depth; ++n) {
    Rational01 threshold = Rational01::pow2(static_cast<unsigned>(n + 2));
    const auto& prev = f.levels.back();
    std::vector<bool> adm(g.size(), false);
    for (int m : prev) adm[static_cast<size_t>(m)] = target[static_cast<size_t>(m)] < threshold;
    std::vector<int> s = largest_symmetric_unital(g, adm, unit_obj);
    // Iterated removal until S*S*S <= V_n; drop the highest-indexed violator
    // together with its inverse to stay symmetric.
    while (true) {
      std::vector<bool> in(g.size(), false);
      for (int m : s) in[static_cast<size_t>(m)] = true;
      int worst = -1;
      for (int a : s)
        for (int b : s) {
          if (!g.composable(a, b)) continue;
          int ab = g.mul(a, b);
          for (int c : s) {
            if (!g.composable(ab, c)) continue;
            if (!std::binary_search(prev.begin(), prev.end(), g.mul(ab, c))) {
              for (int m : {a, b, c})
                if (!g.is_unit(m)) worst = std::max(worst, m);
            }
          }
        }
      if (worst < 0) break;
      std::vector<int> next;
      for (int m : s)
        if (m != worst && m != g.inv(worst)) next.push_back(m);
      s = std::move(next);
    }
    f.levels.push_back(std::move(s));
  }
  FiltrationVerdict fv = filtration_check(g, f);
  if (!fv.ok) throw Error("synthesize_filtration: output violates invariant " + fv.failed_invariant);
  return f;
}

BirkhoffResult birkhoff_kakutani(const FinGroupoid& g, const Filtration& f,
                                 const GreyMorphismSet* target) {
  FiltrationVerdict fv = filtration_check(g, f);
  if (!fv.ok) throw Error("birkhoff_kakutani: filtration invariant '" + fv.failed_invariant + "' fails");
  BirkhoffResult out;
  GreyMorphismSet vprime(g.size(), Rational01::one());
  for (size_t n = 0; n < f.levels.size(); ++n)
    for (int m : f.levels[n]) vprime[static_cast<size_t>(m)] = Rational01::pow2(static_cast<unsigned>(n));
  for (int m : f.levels[0])
    if (g.is_unit(m)) vprime[static_cast<size_t>(m)] = Rational01::zero();
  out.vprime = vprime;
  out.w = grey_closure(g, vprime);
  BirkhoffCertificate& c = out.cert;
  c.is_norm = grey_norm_check(g, out.w.values).ok;
  // Unit set of W_{=0} matches the filtration's unit set.
  c.unit_set_ok = true;
  std::set<int> filt_units;
  for (int m : f.levels[0])
    if (g.is_unit(m)) filt_units.insert(m);
  for (size_t x = 0; x < g.object_count(); ++x) {
    bool zero = out.w.values[static_cast<size_t>(g.unit[x])].is_zero();
    if (zero != (filt_units.count(g.unit[x]) > 0)) c.unit_set_ok = false;
  }
  c.chaining_ok = true;
  for (size_t m = 0; m < g.size(); ++m)
    if (out.w.values[m] < vprime[m].half()) c.chaining_ok = false;
  if (target) {
    c.target_supplied = true;
    c.target_condition_met = true;
    for (size_t n = 0; n < f.levels.size(); ++n) {
      Rational01 bound = Rational01::pow2(static_cast<unsigned>(n + 1));
      for (int m : f.levels[n])
        if (!((*target)[static_cast<size_t>(m)] < bound)) c.target_condition_met = false;
    }
    c.target_dominated = true;
    for (size_t m = 0; m < g.size(); ++m)
      if (out.w.values[m] < (*target)[m]) c.target_dominated = false;
  }
  return out;
}

CosetMetricSpace coset_metric_space(const FinGroupoid& g, const GreyNorm& u) {
  LeftInvariantMetric d = norm_to_metric(g, u);
  Pseudometric pm(d.rel);
  MetricQuotient mq = metric_quotient(pm);
  CosetMetricSpace out;
  out.space = mq.space;
  out.domain = d.domain;
  out.class_of.assign(g.size(), -1);
  for (size_t i = 0; i < d.domain.size(); ++i)
    out.class_of[static_cast<size_t>(d.domain[i])] = mq.class_of[i];
  out.tau.assign(out.space.size(), -1);
  for (size_t i = 0; i < d.domain.size(); ++i) {
    int p = mq.class_of[i];
    int t = g.tgt[static_cast<size_t>(d.domain[i])];
    if (out.tau[static_cast<size_t>(p)] >= 0 && out.tau[static_cast<size_t>(p)] != t)
      throw Error("coset_metric_space: tau not constant on classes");
    out.tau[static_cast<size_t>(p)] = t;
  }
  out.unit_point.assign(g.object_count(), -1);
  for (int x : u.unit_objects(g))
    out.unit_point[static_cast<size_t>(x)] = out.class_of[static_cast<size_t>(g.unit[static_cast<size_t>(x)])];
  out.left_act.assign(g.size(), std::vector<int>(out.space.size(), -1));
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t i = 0; i < d.domain.size(); ++i) {
      int h = d.domain[i];
      if (g.src[m] != g.tgt[static_cast<size_t>(h)]) continue;
      int img = out.class_of[static_cast<size_t>(g.mul(static_cast<int>(m), h))];
      int p = mq.class_of[i];
      if (out.left_act[m][static_cast<size_t>(p)] >= 0 && out.left_act[m][static_cast<size_t>(p)] != img)
        throw Error("coset_metric_space: left action not well-defined");
      out.left_act[m][static_cast<size_t>(p)] = img;
    }
  // The action is isometric fiberwise.
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t p = 0; p < out.space.size(); ++p)
      for (size_t q = 0; q < out.space.size(); ++q) {
        int ip = out.left_act[m][p], iq = out.left_act[m][q];
        if (ip < 0 || iq < 0) continue;
        if (out.space.d(ip, iq) != out.space.d(static_cast<int>(p), static_cast<int>(q)))
          throw Error("coset_metric_space: left action not isometric");
      }
  return out;
}

SandwichResult right_mult_grey_relation(const FinGroupoid& g, const GreyNorm& u, const GreyNorm& v,
                                        const std::vector<int>& s, const Rational01& r) {
  SandwichResult res;
  std::vector<bool> v_unit(g.object_count(), false);
  for (int x : v.unit_objects(g)) v_unit[static_cast<size_t>(x)] = true;
  for (int m : s)
    if (!v_unit[static_cast<size_t>(g.src[static_cast<size_t>(m)])]) {
      res.failed_precondition = "domain";
      res.witness = {m};
      return res;
    }
  // S is V_{<r}-small: V(s^-1 * s') < r for composable pairs.
  for (int a : s)
    for (int b : s) {
      if (g.tgt[static_cast<size_t>(a)] != g.tgt[static_cast<size_t>(b)]) continue;
      int m = g.mul(g.inv(a), b);
      if (!(v.at(m) < r)) {
        res.failed_precondition = "small";
        res.witness = {m};
        return res;
      }
    }
  // U <= S . V . S^- pointwise (reversed order: U dominates).
  GreyMorphismSet svs = grey_conv(g, grey_conv(g, grey_indicator(g, s), v.values),
                                  grey_inv(g, grey_indicator(g, s)));
  for (size_t m = 0; m < g.size(); ++m)
    if (u.at(static_cast<int>(m)) < svs[m]) {
      res.failed_precondition = "domination";
      res.witness = {static_cast<int>(m)};
      return res;
    }
  res.ok = true;

  CosetMetricSpace cu = coset_metric_space(g, u), cv = coset_metric_space(g, v);
  GreyMorphismSet usv = grey_conv(g, grey_conv(g, u.values, grey_indicator(g, s)), v.values);
  auto rel_value = [&](int gm, int hm) {  // R(g,h) = (U . S . V)(g^-1 h), same tau fiber
    return usv[static_cast<size_t>(g.mul(g.inv(gm), hm))];
  };
  auto dv_gs_h = [&](int gm, int hm) {  // d_V(g*S, h) = min_s V((g s)^-1 h)
    Rational01 best = Rational01::one();
    for (int sm : s) {
      if (!g.composable(gm, sm)) continue;
      int gs = g.mul(gm, sm);
      if (g.tgt[static_cast<size_t>(gs)] != g.tgt[static_cast<size_t>(hm)]) continue;
      best = rat_min(best, v.at(g.mul(g.inv(gs), hm)));
    }
    return best;
  };
  // Invariance under d_U (+) d_V, hence descent to the quotients.
  res.invariant_ok = true;
  res.sandwich_ok = true;
  for (int gm : cu.domain)
    for (int hm : cv.domain) {
      if (g.tgt[static_cast<size_t>(gm)] != g.tgt[static_cast<size_t>(hm)]) continue;
      Rational01 rv = rel_value(gm, hm);
      for (int gm2 : cu.domain)
        for (int hm2 : cv.domain) {
          if (g.tgt[static_cast<size_t>(gm2)] != g.tgt[static_cast<size_t>(gm)] ||
              g.tgt[static_cast<size_t>(hm2)] != g.tgt[static_cast<size_t>(hm)])
            continue;
          Rational01 du = u.at(g.mul(g.inv(gm), gm2));
          Rational01 dv = v.at(g.mul(g.inv(hm), hm2));
          if (rv.trunc_add(du).trunc_add(dv) < rel_value(gm2, hm2) ||
              rel_value(gm2, hm2).trunc_add(du).trunc_add(dv) < rv)
            res.invariant_ok = false;
        }
      Rational01 d = dv_gs_h(gm, hm);
      if (!(d >= rv && rv >= d.trunc_sub(r))) res.sandwich_ok = false;
    }
  // Quotient-level table on representatives.
  res.table.assign(cu.space.size() * cv.space.size(), Rational01::one());
  for (int gm : cu.domain)
    for (int hm : cv.domain) {
      if (g.tgt[static_cast<size_t>(gm)] != g.tgt[static_cast<size_t>(hm)]) continue;
      size_t idx = static_cast<size_t>(cu.class_of[static_cast<size_t>(gm)]) * cv.space.size() +
                   static_cast<size_t>(cv.class_of[static_cast<size_t>(hm)]);
      Rational01 rv = rel_value(gm, hm);
      if (!res.table[idx].is_one() && res.table[idx] != rv) res.invariant_ok = false;
      res.table[idx] = rv;
    }
  return res;
}

std::vector<std::vector<int>> default_metric_sections(const FinGroupoid& g, const GreyNorm& u) {
  std::vector<std::vector<int>> out;
  std::vector<int> units;
  std::vector<bool> unit_obj(g.object_count(), false);
  for (int x : u.unit_objects(g)) {
    unit_obj[static_cast<size_t>(x)] = true;
    units.push_back(g.unit[static_cast<size_t>(x)]);
  }
  out.push_back(units);  // the unit section
  for (size_t m = 0; m < g.size(); ++m)
    if (unit_obj[static_cast<size_t>(g.src[m])]) out.push_back({static_cast<int>(m)});
  return out;
}

MetricCanonicalStructure metric_canonical_structure(const FinGroupoid& g, std::vector<GreyNorm> norms,
                                                    std::vector<std::vector<std::vector<int>>> sections) {
  if (norms.size() != sections.size()) throw Error("metric_canonical_structure: sections do not match norms");
  MetricCanonicalStructure mc;
  mc.g = &g;
  mc.norms = std::move(norms);
  mc.sections = std::move(sections);
  // Closure of the norm family under +. (finite analog of (US3)).
  for (size_t a = 0; a < mc.norms.size(); ++a)
    for (size_t b = 0; b < mc.norms.size(); ++b) {
      GreyNorm sum = norm_sum(g, mc.norms[a], mc.norms[b]);
      bool found = false;
      for (const auto& n : mc.norms) found = found || n.values == sum.values;
      if (!found) throw Error("metric_canonical_structure: norm family not closed under truncated sums");
    }
  for (size_t u = 0; u < mc.norms.size(); ++u) mc.spaces.push_back(coset_metric_space(g, mc.norms[u]));
  // Basis precondition: for every positive realized distance r of d_U and
  // every morphism in the domain, some section is U_{<r}-small and contains it.
  for (size_t u = 0; u < mc.norms.size(); ++u) {
    std::vector<Rational01> realized;
    for (int gm : mc.spaces[u].domain)
      for (int hm : mc.spaces[u].domain) {
        if (g.tgt[static_cast<size_t>(gm)] != g.tgt[static_cast<size_t>(hm)]) continue;
        Rational01 d = mc.norms[u].at(g.mul(g.inv(gm), hm));
        if (!d.is_zero()) realized.push_back(d);
      }
    for (int gm : mc.spaces[u].domain)
      for (const Rational01& r : realized) {
        bool found = false;
        for (const auto& s : mc.sections[u]) {
          if (std::find(s.begin(), s.end(), gm) == s.end()) continue;
          bool small = true;
          for (int a : s)
            for (int b : s) {
              if (g.tgt[static_cast<size_t>(a)] != g.tgt[static_cast<size_t>(b)]) continue;
              if (!(mc.norms[u].at(g.mul(g.inv(a), b)) < r)) small = false;
            }
          if (small) {
            found = true;
            break;
          }
        }
        if (!found)
          throw Error("metric_canonical_structure: insufficient basis at morphism " +
                      g.morphisms[static_cast<size_t>(gm)] + ", radius " + r.str());
      }
  }
  // Relation symbols for every admissible (U, V, S).
  for (size_t u = 0; u < mc.norms.size(); ++u)
    for (size_t v = 0; v < mc.norms.size(); ++v)
      for (size_t s = 0; s < mc.sections[v].size(); ++s) {
        const auto& sec = mc.sections[v][s];
        if (sec.empty()) continue;
        // Sharp smallness radius: max V on S^-1 * S plus the requirement that
        // the section lies in the V-domain.
        bool in_domain = true;
        for (int m : sec)
          in_domain = in_domain &&
                      mc.norms[v].values[static_cast<size_t>(g.unit[static_cast<size_t>(g.src[static_cast<size_t>(m)])])]
                          .is_zero();
        if (!in_domain) continue;
        Rational01 rsharp = Rational01::zero();
        for (int a : sec)
          for (int b : sec) {
            if (g.tgt[static_cast<size_t>(a)] != g.tgt[static_cast<size_t>(b)]) continue;
            rsharp = rat_max(rsharp, mc.norms[v].at(g.mul(g.inv(a), b)));
          }
        GreyMorphismSet svs = grey_conv(g, grey_conv(g, grey_indicator(g, sec), mc.norms[v].values),
                                        grey_inv(g, grey_indicator(g, sec)));
        bool dominated = true;
        for (size_t m = 0; m < g.size(); ++m) dominated = dominated && !(mc.norms[u].at(static_cast<int>(m)) < svs[m]);
        if (!dominated) continue;
        GreyMorphismSet usv =
            grey_conv(g, grey_conv(g, mc.norms[u].values, grey_indicator(g, sec)), mc.norms[v].values);
        MetricCanonicalStructure::RelSym sym;
        sym.u = static_cast<int>(u);
        sym.v = static_cast<int>(v);
        sym.s = static_cast<int>(s);
        sym.r = rsharp;
        sym.table.assign(mc.spaces[u].space.size() * mc.spaces[v].space.size(), Rational01::one());
        for (int gm : mc.spaces[u].domain)
          for (int hm : mc.spaces[v].domain) {
            if (g.tgt[static_cast<size_t>(gm)] != g.tgt[static_cast<size_t>(hm)]) continue;
            size_t idx = static_cast<size_t>(mc.spaces[u].class_of[static_cast<size_t>(gm)]) *
                             mc.spaces[v].space.size() +
                         static_cast<size_t>(mc.spaces[v].class_of[static_cast<size_t>(hm)]);
            sym.table[idx] = usv[static_cast<size_t>(g.mul(g.inv(gm), hm))];
          }
        mc.rels.push_back(std::move(sym));
      }
  return mc;
}

namespace {

struct MetricHomSearch {
  const MetricCanonicalStructure& mc;
  int x, y;
  bool iso;
  Rational01 eps;  // slack for the experimental eps-homomorphism count
  std::vector<std::vector<int>> fiber_x, fiber_y;  // per sort: point indices
  std::vector<std::vector<int>> map;               // per sort: -1 unset
  std::vector<std::vector<bool>> used;
  std::vector<std::pair<int, int>> slots;
  std::vector<MetricFiberMap>* out;

  bool consistent() const {
    const auto& spaces = mc.spaces;
    for (size_t u = 0; u < map.size(); ++u)
      for (size_t i = 0; i < map[u].size(); ++i) {
        if (map[u][i] < 0) continue;
        for (size_t j = 0; j < map[u].size(); ++j) {
          if (map[u][j] < 0) continue;
          Rational01 dx = spaces[u].space.d(fiber_x[u][i], fiber_x[u][j]);
          Rational01 dy = spaces[u].space.d(fiber_y[u][static_cast<size_t>(map[u][i])],
                                            fiber_y[u][static_cast<size_t>(map[u][j])]);
          if (iso ? dy != dx : dx.trunc_add(eps) < dy) return false;
        }
      }
    for (const auto& rel : mc.rels) {
      size_t u = static_cast<size_t>(rel.u), v = static_cast<size_t>(rel.v);
      for (size_t i = 0; i < map[u].size(); ++i) {
        if (map[u][i] < 0) continue;
        for (size_t j = 0; j < map[v].size(); ++j) {
          if (map[v][j] < 0) continue;
          Rational01 rx = rel.table[static_cast<size_t>(fiber_x[u][i]) * mc.spaces[v].space.size() +
                                    static_cast<size_t>(fiber_x[v][j])];
          Rational01 ry = rel.table[static_cast<size_t>(fiber_y[u][static_cast<size_t>(map[u][i])]) *
                                        mc.spaces[v].space.size() +
                                    static_cast<size_t>(fiber_y[v][static_cast<size_t>(map[v][j])])];
          if (iso ? ry != rx : rx.trunc_add(eps) < ry) return false;
        }
      }
    }
    return true;
  }

  void rec(size_t slot) {
    if (slot == slots.size()) {
      out->push_back(map);
      return;
    }
    auto [u, i] = slots[slot];
    for (size_t c = 0; c < fiber_y[static_cast<size_t>(u)].size(); ++c) {
      if (iso && used[static_cast<size_t>(u)][c]) continue;
      map[static_cast<size_t>(u)][static_cast<size_t>(i)] = static_cast<int>(c);
      if (iso) used[static_cast<size_t>(u)][c] = true;
      if (consistent()) rec(slot + 1);
      if (iso) used[static_cast<size_t>(u)][c] = false;
      map[static_cast<size_t>(u)][static_cast<size_t>(i)] = -1;
    }
  }
};

std::vector<MetricFiberMap> enumerate_metric_maps(const MetricCanonicalStructure& mc, int x, int y,
                                                  bool iso, Rational01 eps = Rational01::zero()) {
  std::vector<MetricFiberMap> out;
  MetricHomSearch hs{mc, x, y, iso, eps, {}, {}, {}, {}, {}, &out};
  size_t ns = mc.norms.size();
  hs.fiber_x.resize(ns);
  hs.fiber_y.resize(ns);
  hs.map.resize(ns);
  hs.used.resize(ns);
  for (size_t u = 0; u < ns; ++u) {
    for (size_t p = 0; p < mc.spaces[u].space.size(); ++p) {
      if (mc.spaces[u].tau[p] == x) hs.fiber_x[u].push_back(static_cast<int>(p));
      if (mc.spaces[u].tau[p] == y) hs.fiber_y[u].push_back(static_cast<int>(p));
    }
    if (iso && hs.fiber_x[u].size() != hs.fiber_y[u].size()) return out;
    hs.map[u].assign(hs.fiber_x[u].size(), -1);
    hs.used[u].assign(hs.fiber_y[u].size(), false);
    for (size_t i = 0; i < hs.fiber_x[u].size(); ++i) hs.slots.emplace_back(static_cast<int>(u), static_cast<int>(i));
  }
  hs.rec(0);
  return out;
}

}  // namespace

std::vector<MetricFiberMap> enumerate_metric_homs(const MetricCanonicalStructure& mc, int x, int y) {
  return enumerate_metric_maps(mc, x, y, false);
}

std::vector<MetricFiberMap> enumerate_metric_isos(const MetricCanonicalStructure& mc, int x, int y) {
  return enumerate_metric_maps(mc, x, y, true);
}

size_t count_metric_eps_homs(const MetricCanonicalStructure& mc, int x, int y, const Rational01& eps) {
  return enumerate_metric_maps(mc, x, y, false, eps).size();
}

MetricYonedaReport metric_yoneda_check(const MetricCanonicalStructure& mc) {
  MetricYonedaReport rep;
  const FinGroupoid& g = *mc.g;
  size_t ns = mc.norms.size();
  // Separating condition: distinct parallel morphisms are distinguished by
  // some norm with the source among its unit objects.
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t b = a + 1; b < g.size(); ++b) {
      if (g.src[a] != g.src[b] || g.tgt[a] != g.tgt[b]) continue;
      bool separated = false;
      for (size_t u = 0; u < ns && !separated; ++u) {
        if (mc.spaces[u].class_of[a] < 0 || mc.spaces[u].class_of[b] < 0) continue;
        separated = !mc.norms[u].at(g.mul(g.inv(static_cast<int>(a)), static_cast<int>(b))).is_zero();
      }
      if (!separated) rep.separating_violations.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  // Per-sort fibers and eta as point maps.
  auto fiber_at = [&](size_t u, int x) {
    std::vector<int> out;
    for (size_t p = 0; p < mc.spaces[u].space.size(); ++p)
      if (mc.spaces[u].tau[p] == x) out.push_back(static_cast<int>(p));
    return out;
  };
  auto eta_map = [&](int m) {
    int x = g.src[static_cast<size_t>(m)];
    MetricFiberMap h(ns);
    for (size_t u = 0; u < ns; ++u) {
      auto fx = fiber_at(u, x);
      auto fy = fiber_at(u, g.tgt[static_cast<size_t>(m)]);
      h[u].assign(fx.size(), -1);
      for (size_t i = 0; i < fx.size(); ++i) {
        int img = mc.spaces[u].left_act[static_cast<size_t>(m)][static_cast<size_t>(fx[i])];
        auto it = std::find(fy.begin(), fy.end(), img);
        if (it == fy.end()) throw Error("metric_yoneda_check: eta image outside the target fiber");
        h[u][i] = static_cast<int>(it - fy.begin());
      }
    }
    return h;
  };
  // Coherent families: per sort with x among its unit objects, a point of the
  // fiber at y, compatible under the projections pi_{U,V} for U <= V.
  auto coherent_families = [&](int x, int y) {
    std::vector<int> active;
    for (size_t u = 0; u < ns; ++u)
      if (mc.spaces[u].unit_point[static_cast<size_t>(x)] >= 0) active.push_back(static_cast<int>(u));
    std::vector<std::vector<int>> fams;
    std::vector<int> fam(ns, -1);
    auto dominates = [&](size_t u, size_t v) {  // U <= V in the grey order
      for (size_t m = 0; m < g.size(); ++m)
        if (mc.norms[u].at(static_cast<int>(m)) < mc.norms[v].at(static_cast<int>(m))) return false;
      return true;
    };
    auto coherent = [&]() {
      for (int u : active)
        for (int v : active) {
          if (u == v || !dominates(static_cast<size_t>(u), static_cast<size_t>(v))) continue;
          // pi_{U,V}: the V-class of any U-class representative.
          int rep = -1;
          for (int m : mc.spaces[static_cast<size_t>(u)].domain)
            if (mc.spaces[static_cast<size_t>(u)].class_of[static_cast<size_t>(m)] == fam[static_cast<size_t>(u)]) {
              rep = m;
              break;
            }
          if (rep < 0 || mc.spaces[static_cast<size_t>(v)].class_of[static_cast<size_t>(rep)] !=
                             fam[static_cast<size_t>(v)])
            return false;
        }
      return true;
    };
    auto rec = [&](auto&& self, size_t i) -> void {
      if (i == active.size()) {
        if (coherent()) fams.push_back(fam);
        return;
      }
      size_t u = static_cast<size_t>(active[i]);
      for (int p : fiber_at(u, y)) {
        fam[u] = p;
        self(self, i + 1);
      }
      fam[u] = -1;
    };
    rec(rec, 0);
    return fams;
  };

  rep.ok = true;
  for (size_t x = 0; x < g.object_count(); ++x)
    for (size_t y = 0; y < g.object_count(); ++y) {
      auto gh = g.hom(static_cast<int>(x), static_cast<int>(y));
      auto isos = enumerate_metric_isos(mc, static_cast<int>(x), static_cast<int>(y));
      auto homs = enumerate_metric_homs(mc, static_cast<int>(x), static_cast<int>(y));
      rep.hom_counts.emplace_back(static_cast<int>(x), static_cast<int>(y), gh.size(), isos.size());
      // Phi on enumerated homs: h |-> (h_U(pi_U x))_U; injectivity.
      std::vector<std::vector<int>> phis;
      for (const auto& h : homs) {
        std::vector<int> phi(ns, -1);
        for (size_t u = 0; u < ns; ++u) {
          int up = mc.spaces[u].unit_point[x];
          if (up < 0) continue;
          auto fx = fiber_at(u, static_cast<int>(x));
          auto fy = fiber_at(u, static_cast<int>(y));
          auto it = std::find(fx.begin(), fx.end(), up);
          phi[u] = fy[static_cast<size_t>(h[u][static_cast<size_t>(it - fx.begin())])];
        }
        phis.push_back(std::move(phi));
      }
      for (size_t i = 0; i < phis.size(); ++i)
        for (size_t j = i + 1; j < phis.size(); ++j)
          if (phis[i] == phis[j]) {
            rep.phi_injective = false;
            rep.failure = "Phi not injective on Hom";
          }
      // eta lands bijectively onto the coherent families.
      auto fams = coherent_families(static_cast<int>(x), static_cast<int>(y));
      std::vector<std::vector<int>> eta_fams;
      for (int m : gh) {
        std::vector<int> fam(ns, -1);
        for (size_t u = 0; u < ns; ++u) {
          if (mc.spaces[u].unit_point[x] < 0) continue;
          fam[u] = mc.spaces[u].class_of[static_cast<size_t>(m)];
          if (fam[u] < 0) throw Error("metric_yoneda_check: morphism escapes a sort's domain");
        }
        eta_fams.push_back(std::move(fam));
      }
      std::sort(fams.begin(), fams.end());
      auto uniq = eta_fams;
      std::sort(uniq.begin(), uniq.end());
      bool skip_injectivity = false;
      for (auto& [a, b] : rep.separating_violations) {
        if ((g.src[static_cast<size_t>(a)] == static_cast<int>(x) &&
             g.tgt[static_cast<size_t>(a)] == static_cast<int>(y)))
          skip_injectivity = true;
      }
      if (!skip_injectivity && std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end()) {
        rep.eta_onto_families = false;
        rep.failure = "eta family map not injective";
      }
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      if (uniq != fams) {
        rep.eta_onto_families = false;
        rep.failure = "eta families do not exhaust the coherent families";
      }
      // eta : G(x,y) ~ Iso(M)(x,y).
      std::vector<MetricFiberMap> images;
      for (int m : gh) images.push_back(eta_map(m));
      for (const auto& im : images)
        if (std::find(isos.begin(), isos.end(), im) == isos.end()) {
          rep.eta_iso = false;
          rep.failure = "eta image is not an isomorphism";
        }
      if (!skip_injectivity) {
        std::vector<MetricFiberMap> sorted = images;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          rep.eta_iso = false;
          rep.failure = "eta not injective";
        }
        for (const auto& iso : isos)
          if (std::find(images.begin(), images.end(), iso) == images.end()) {
            rep.eta_iso = false;
            rep.failure = "eta not surjective onto Iso(M)";
          }
      }
    }
  rep.ok = rep.phi_injective && rep.eta_onto_families && rep.eta_iso;
  return rep;
}

}  // namespace topogrey
