#include "topogrey/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace topogrey {

int FinGroupoid::mul(int g, int h) const {
  if (!composable(g, h)) throw Error("groupoid: morphisms not composable");
  return compose[static_cast<size_t>(g)][static_cast<size_t>(h)];
}

std::vector<int> FinGroupoid::hom(int x, int y) const {
  std::vector<int> out;
  for (size_t m = 0; m < size(); ++m)
    if (src[m] == x && tgt[m] == y) out.push_back(static_cast<int>(m));
  return out;
}

int FinGroupoid::morphism_index(const std::string& id) const {
  auto it = std::find(morphisms.begin(), morphisms.end(), id);
  if (it == morphisms.end()) throw Error("groupoid: unknown morphism '" + id + "'");
  return static_cast<int>(it - morphisms.begin());
}

FinGroupoid FinGroupoid::cyclic_group(int n) {
  FinGroupoid g;
  g.objects = {"*"};
  for (int i = 0; i < n; ++i) g.morphisms.push_back(std::to_string(i));
  g.src.assign(static_cast<size_t>(n), 0);
  g.tgt.assign(static_cast<size_t>(n), 0);
  g.unit = {0};
  g.compose.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  g.inverse.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    g.inverse[static_cast<size_t>(i)] = (n - i) % n;
    for (int j = 0; j < n; ++j) g.compose[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  }
  return g;
}

FinGroupoid FinGroupoid::pair_groupoid(int n) {
  FinGroupoid g;
  for (int i = 0; i < n; ++i) g.objects.push_back("x" + std::to_string(i));
  auto id_of = [n](int x, int y) { return x * n + y; };  // morphism x -> y
  g.compose.assign(static_cast<size_t>(n * n), std::vector<int>(static_cast<size_t>(n * n), -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      g.morphisms.push_back("g" + std::to_string(x) + std::to_string(y));
      g.src.push_back(x);
      g.tgt.push_back(y);
      g.inverse.push_back(id_of(y, x));
    }
  for (int x = 0; x < n; ++x) g.unit.push_back(id_of(x, x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        g.compose[static_cast<size_t>(id_of(y, z))][static_cast<size_t>(id_of(x, y))] = id_of(x, z);
  return g;
}

FinGroupoid FinGroupoid::discrete(int n) {
  FinGroupoid g;
  for (int i = 0; i < n; ++i) {
    g.objects.push_back("x" + std::to_string(i));
    g.morphisms.push_back("e" + std::to_string(i));
    g.src.push_back(i);
    g.tgt.push_back(i);
    g.unit.push_back(i);
    g.inverse.push_back(i);
  }
  g.compose.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
  for (int i = 0; i < n; ++i) g.compose[static_cast<size_t>(i)][static_cast<size_t>(i)] = i;
  return g;
}

FinGroupoid FinGroupoid::disjoint_union(const FinGroupoid& a, const FinGroupoid& b) {
  FinGroupoid g;
  int ob = static_cast<int>(a.object_count());
  int mb = static_cast<int>(a.size());
  g.objects = a.objects;
  for (const auto& o : b.objects) g.objects.push_back("b." + o);
  g.morphisms = a.morphisms;
  for (const auto& m : b.morphisms) g.morphisms.push_back("b." + m);
  g.src = a.src;
  g.tgt = a.tgt;
  for (int s : b.src) g.src.push_back(s + ob);
  for (int t : b.tgt) g.tgt.push_back(t + ob);
  g.unit = a.unit;
  for (int u : b.unit) g.unit.push_back(u + mb);
  g.inverse = a.inverse;
  for (int i : b.inverse) g.inverse.push_back(i + mb);
  size_t n = g.size();
  g.compose.assign(n, std::vector<int>(n, -1));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) g.compose[i][j] = a.compose[i][j];
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      int c = b.compose[i][j];
      g.compose[i + static_cast<size_t>(mb)][j + static_cast<size_t>(mb)] = c < 0 ? -1 : c + mb;
    }
  return g;
}

GroupoidVerdict validate_groupoid(const FinGroupoid& g) {
  GroupoidVerdict v;
  auto fail = [&](std::string axiom, std::vector<int> w) {
    v.failed_axiom = std::move(axiom);
    v.witness = std::move(w);
    return v;
  };
  int n = static_cast<int>(g.size());
  if (g.src.size() != g.size() || g.tgt.size() != g.size() || g.inverse.size() != g.size() ||
      g.compose.size() != g.size() || g.unit.size() != g.object_count())
    return fail("tables", {});
  for (int m = 0; m < n; ++m) {
    if (g.compose[static_cast<size_t>(m)].size() != g.size()) return fail("tables", {m});
    if (g.src[static_cast<size_t>(m)] < 0 || g.src[static_cast<size_t>(m)] >= static_cast<int>(g.object_count()) ||
        g.tgt[static_cast<size_t>(m)] < 0 || g.tgt[static_cast<size_t>(m)] >= static_cast<int>(g.object_count()))
      return fail("source-target-range", {m});
  }
  for (size_t x = 0; x < g.object_count(); ++x) {
    int u = g.unit[x];
    if (u < 0 || u >= n) return fail("unit-range", {});
    if (g.src[static_cast<size_t>(u)] != static_cast<int>(x) || g.tgt[static_cast<size_t>(u)] != static_cast<int>(x))
      return fail("unit-endpoints", {u});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = g.compose[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (g.composable(a, b)) {
        if (c < 0 || c >= n) return fail("composition-defined", {a, b});
        if (g.src[static_cast<size_t>(c)] != g.src[static_cast<size_t>(b)] ||
            g.tgt[static_cast<size_t>(c)] != g.tgt[static_cast<size_t>(a)])
          return fail("composition-endpoints", {a, b, c});
      } else if (c != -1) {
        return fail("composition-domain", {a, b});
      }
    }
  for (int a = 0; a < n; ++a) {
    int us = g.unit[static_cast<size_t>(g.src[static_cast<size_t>(a)])];
    int ut = g.unit[static_cast<size_t>(g.tgt[static_cast<size_t>(a)])];
    if (g.mul(a, us) != a) return fail("right-unit", {a});
    if (g.mul(ut, a) != a) return fail("left-unit", {a});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!g.composable(b, c)) continue;
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return fail("associativity", {a, b, c});
      }
    }
  for (int a = 0; a < n; ++a) {
    int i = g.inverse[static_cast<size_t>(a)];
    if (i < 0 || i >= n) return fail("inverse-range", {a});
    if (g.src[static_cast<size_t>(i)] != g.tgt[static_cast<size_t>(a)] ||
        g.tgt[static_cast<size_t>(i)] != g.src[static_cast<size_t>(a)])
      return fail("inverse-endpoints", {a});
    if (g.mul(a, i) != g.unit[static_cast<size_t>(g.tgt[static_cast<size_t>(a)])]) return fail("right-inverse", {a});
    if (g.mul(i, a) != g.unit[static_cast<size_t>(g.src[static_cast<size_t>(a)])]) return fail("left-inverse", {a});
  }
  v.ok = true;
  return v;
}

std::vector<int> orbits(const FinGroupoid& g) {
  std::vector<int> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    return x;
  };
  for (size_t m = 0; m < g.size(); ++m) {
    int a = find(g.src[m]), b = find(g.tgt[m]);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> out(g.object_count());
  for (size_t x = 0; x < g.object_count(); ++x) out[x] = find(static_cast<int>(x));
  return out;
}

bool Subgroupoid::contains(int m) const {
  return std::binary_search(morphisms.begin(), morphisms.end(), m);
}

std::vector<int> Subgroupoid::unit_objects(const FinGroupoid& g) const {
  std::vector<int> out;
  for (int m : morphisms)
    if (g.is_unit(m)) out.push_back(g.src[static_cast<size_t>(m)]);
  return out;
}

bool is_subgroupoid(const FinGroupoid& g, const std::vector<int>& morphs) {
  std::vector<bool> in(g.size(), false);
  for (int m : morphs) in[static_cast<size_t>(m)] = true;
  for (int m : morphs) {
    if (!in[static_cast<size_t>(g.inv(m))]) return false;
    for (int h : morphs)
      if (g.composable(m, h) && !in[static_cast<size_t>(g.mul(m, h))]) return false;
  }
  return true;
}

Subgroupoid generated_subgroupoid(const FinGroupoid& g, const std::vector<int>& a) {
  std::vector<bool> in(g.size(), false);
  for (int m : a) {
    in[static_cast<size_t>(m)] = true;
    in[static_cast<size_t>(g.inv(m))] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t x = 0; x < g.size(); ++x) {
      if (!in[x]) continue;
      for (size_t y = 0; y < g.size(); ++y) {
        if (!in[y] || !g.composable(static_cast<int>(x), static_cast<int>(y))) continue;
        int c = g.mul(static_cast<int>(x), static_cast<int>(y));
        if (!in[static_cast<size_t>(c)]) {
          in[static_cast<size_t>(c)] = true;
          changed = true;
        }
      }
    }
  }
  Subgroupoid u;
  for (size_t m = 0; m < g.size(); ++m)
    if (in[m]) u.morphisms.push_back(static_cast<int>(m));
  return u;
}

std::vector<int> set_product(const FinGroupoid& g, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<bool> in(g.size(), false);
  for (int x : a)
    for (int y : b)
      if (g.composable(x, y)) in[static_cast<size_t>(g.mul(x, y))] = true;
  std::vector<int> out;
  for (size_t m = 0; m < g.size(); ++m)
    if (in[m]) out.push_back(static_cast<int>(m));
  return out;
}

std::vector<int> set_inverse(const FinGroupoid& g, const std::vector<int>& a) {
  std::vector<int> out;
  for (int x : a) out.push_back(g.inv(x));
  std::sort(out.begin(), out.end());
  return out;
}

ActionVerdict validate_action(const FinGroupoid& g, const GroupoidAction& a) {
  ActionVerdict v;
  auto fail = [&](std::string axiom, std::vector<int> w) {
    v.failed_axiom = std::move(axiom);
    v.witness = std::move(w);
    return v;
  };
  size_t ne = a.elements.size();
  if (a.anchor.size() != ne || a.act.size() != g.size()) return fail("tables", {});
  for (size_t m = 0; m < g.size(); ++m) {
    if (a.act[m].size() != ne) return fail("tables", {static_cast<int>(m)});
    for (size_t e = 0; e < ne; ++e) {
      int r = a.act[m][e];
      bool applies = g.src[m] == a.anchor[e];
      if (applies != (r >= 0)) return fail("domain", {static_cast<int>(m), static_cast<int>(e)});
      if (r >= 0 && a.anchor[static_cast<size_t>(r)] != g.tgt[m])
        return fail("anchor", {static_cast<int>(m), static_cast<int>(e)});
    }
  }
  for (size_t e = 0; e < ne; ++e) {
    int u = g.unit[static_cast<size_t>(a.anchor[e])];
    if (a.act[static_cast<size_t>(u)][e] != static_cast<int>(e)) return fail("unit", {u, static_cast<int>(e)});
  }
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t h = 0; h < g.size(); ++h) {
      if (!g.composable(static_cast<int>(m), static_cast<int>(h))) continue;
      for (size_t e = 0; e < ne; ++e) {
        if (a.act[h][e] < 0) continue;
        int lhs = a.act[static_cast<size_t>(g.mul(static_cast<int>(m), static_cast<int>(h)))][e];
        int rhs = a.act[m][static_cast<size_t>(a.act[h][e])];
        if (lhs != rhs) return fail("associativity", {static_cast<int>(m), static_cast<int>(h), static_cast<int>(e)});
      }
    }
  v.ok = true;
  return v;
}

FinGroupoid action_groupoid(const FinGroupoid& g, const GroupoidAction& a) {
  ActionVerdict av = validate_action(g, a);
  if (!av.ok) throw Error("action_groupoid: action axiom '" + av.failed_axiom + "' fails");
  FinGroupoid out;
  out.objects = a.elements;
  // Morphisms are pairs (m, e) with src(m) = p(e).
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> pair_id(g.size(), std::vector<int>(a.elements.size(), -1));
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t e = 0; e < a.elements.size(); ++e)
      if (g.src[m] == a.anchor[e]) {
        pair_id[m][e] = static_cast<int>(pairs.size());
        pairs.emplace_back(static_cast<int>(m), static_cast<int>(e));
      }
  for (auto [m, e] : pairs) {
    out.morphisms.push_back("(" + g.morphisms[static_cast<size_t>(m)] + "," + a.elements[static_cast<size_t>(e)] + ")");
    out.src.push_back(e);
    out.tgt.push_back(a.act[static_cast<size_t>(m)][static_cast<size_t>(e)]);
    out.inverse.push_back(pair_id[static_cast<size_t>(g.inv(m))]
                                 [static_cast<size_t>(a.act[static_cast<size_t>(m)][static_cast<size_t>(e)])]);
  }
  for (size_t e = 0; e < a.elements.size(); ++e)
    out.unit.push_back(pair_id[static_cast<size_t>(g.unit[static_cast<size_t>(a.anchor[e])])][e]);
  out.compose.assign(pairs.size(), std::vector<int>(pairs.size(), -1));
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = 0; j < pairs.size(); ++j) {
      auto [m1, e1] = pairs[i];
      auto [m2, e2] = pairs[j];
      if (out.src[i] != out.tgt[j]) continue;  // e1 must equal m2*e2
      out.compose[i][j] = pair_id[static_cast<size_t>(g.mul(m1, m2))][static_cast<size_t>(e2)];
    }
  GroupoidVerdict gv = validate_groupoid(out);
  if (!gv.ok) throw Error("action_groupoid: result fails axiom '" + gv.failed_axiom + "'");
  return out;
}

CosetSpace coset_space(const FinGroupoid& g, const Subgroupoid& u) {
  if (!is_subgroupoid(g, u.morphisms)) throw Error("coset_space: not a subgroupoid");
  CosetSpace cs;
  cs.class_of.assign(g.size(), -1);
  std::vector<bool> unit_obj(g.object_count(), false);
  for (int x : u.unit_objects(g)) unit_obj[static_cast<size_t>(x)] = true;
  for (size_t m = 0; m < g.size(); ++m) {
    if (!unit_obj[static_cast<size_t>(g.src[m])] || cs.class_of[m] >= 0) continue;
    int cls = static_cast<int>(cs.classes.size());
    std::vector<int> members;
    for (size_t h = 0; h < g.size(); ++h) {
      if (!unit_obj[static_cast<size_t>(g.src[h])] || g.tgt[h] != g.tgt[m]) continue;
      if (u.contains(g.mul(g.inv(static_cast<int>(m)), static_cast<int>(h)))) {
        members.push_back(static_cast<int>(h));
        cs.class_of[h] = cls;
      }
    }
    cs.classes.push_back(std::move(members));
    cs.tau.push_back(g.tgt[m]);
  }
  cs.unit_class.assign(g.object_count(), -1);
  for (size_t x = 0; x < g.object_count(); ++x)
    if (unit_obj[x]) cs.unit_class[x] = cs.class_of[static_cast<size_t>(g.unit[x])];
  // Left action on classes, checked below for unit/associativity via membership.
  cs.left_act.assign(g.size(), std::vector<int>(cs.classes.size(), -1));
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t c = 0; c < cs.classes.size(); ++c) {
      if (g.src[m] != cs.tau[c]) continue;
      int image = cs.class_of[static_cast<size_t>(g.mul(static_cast<int>(m), cs.classes[c][0]))];
      // Well-definedness across the class.
      for (int rep : cs.classes[c])
        if (cs.class_of[static_cast<size_t>(g.mul(static_cast<int>(m), rep))] != image)
          throw Error("coset_space: left action not well-defined");
      cs.left_act[m][c] = image;
    }
  for (size_t c = 0; c < cs.classes.size(); ++c) {
    int un = g.unit[static_cast<size_t>(cs.tau[c])];
    if (cs.left_act[static_cast<size_t>(un)][c] != static_cast<int>(c))
      throw Error("coset_space: left action not unital");
  }
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t h = 0; h < g.size(); ++h) {
      if (!g.composable(static_cast<int>(m), static_cast<int>(h))) continue;
      for (size_t c = 0; c < cs.classes.size(); ++c) {
        if (cs.left_act[h][c] < 0) continue;
        if (cs.left_act[static_cast<size_t>(g.mul(static_cast<int>(m), static_cast<int>(h)))][c] !=
            cs.left_act[m][static_cast<size_t>(cs.left_act[h][c])])
          throw Error("coset_space: left action not associative");
      }
    }
  return cs;
}

RightMultResult right_mult_map(const FinGroupoid& g, const Subgroupoid& u, const Subgroupoid& v,
                               const std::vector<int>& s) {
  RightMultResult res;
  auto fail = [&](std::string what, std::vector<int> w) {
    res.failed_precondition = std::move(what);
    res.witness = std::move(w);
    return res;
  };
  // S*V = S (V-invariance).
  std::vector<int> sv = set_product(g, s, v.morphisms);
  std::vector<int> s_sorted = s;
  std::sort(s_sorted.begin(), s_sorted.end());
  if (sv != s_sorted) return fail("invariant", sv);
  // S^-1 * S <= V (V-smallness).
  for (int m : set_product(g, set_inverse(g, s), s))
    if (!v.contains(m)) return fail("small", {m});
  // U <= S * S^-1.
  std::vector<int> ssinv = set_product(g, s, set_inverse(g, s));
  for (int m : u.morphisms)
    if (!std::binary_search(ssinv.begin(), ssinv.end(), m)) return fail("coverage", {m});

  CosetSpace cu = coset_space(g, u), cv = coset_space(g, v);
  res.map.assign(cu.classes.size(), -1);
  for (size_t c = 0; c < cu.classes.size(); ++c) {
    // g*S for every representative; all choices must land in one V-class.
    int image = -1;
    for (int rep : cu.classes[c])
      for (int sm : s) {
        if (!g.composable(rep, sm)) continue;
        int cls = cv.class_of[static_cast<size_t>(g.mul(rep, sm))];
        if (image < 0) image = cls;
        if (cls != image) throw Error("right_mult_map: map not well-defined despite preconditions");
      }
    if (image < 0) throw Error("right_mult_map: empty image class despite coverage");
    res.map[c] = image;
  }
  // Left equivariance.
  for (size_t m = 0; m < g.size(); ++m)
    for (size_t c = 0; c < cu.classes.size(); ++c) {
      if (cu.left_act[m][c] < 0) continue;
      if (res.map[static_cast<size_t>(cu.left_act[m][c])] !=
          cv.left_act[m][static_cast<size_t>(res.map[c])])
        throw Error("right_mult_map: map not equivariant");
    }
  res.ok = true;
  return res;
}

}  // namespace topogrey
