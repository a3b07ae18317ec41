#include "topogrey/katetov.hpp"

#include <algorithm>

namespace topogrey {

KatetovVerdict is_katetov(const FinMetricSpace& base, const std::vector<Rational01>& u) {
  KatetovVerdict v;
  if (u.size() != base.size()) throw Error("is_katetov: function not total on base");
  int n = static_cast<int>(base.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (base.d(i, j) < u[static_cast<size_t>(i)].dist(u[static_cast<size_t>(j)])) {
        v.failed_inequality = "lipschitz";
        v.witness = {i, j};
        return v;
      }
      // Truncated sum suffices: d <= 1, so u(i)+u(j) >= d iff min(1,u(i)+u(j)) >= d.
      if (u[static_cast<size_t>(i)].trunc_add(u[static_cast<size_t>(j)]) < base.d(i, j)) {
        v.failed_inequality = "sum";
        v.witness = {i, j};
        return v;
      }
    }
  v.ok = true;
  return v;
}

Rational01 katetov_distance(const std::vector<Rational01>& u, const std::vector<Rational01>& v) {
  if (u.size() != v.size()) throw Error("katetov_distance: base mismatch");
  Rational01 sup = Rational01::zero();
  for (size_t i = 0; i < u.size(); ++i) sup = rat_max(sup, u[i].dist(v[i]));
  return sup;
}

std::vector<Rational01> delta_embed(const FinMetricSpace& base, int x) {
  std::vector<Rational01> u(base.size());
  for (size_t i = 0; i < u.size(); ++i) u[i] = base.d(x, static_cast<int>(i));
  return u;
}

std::vector<Rational01> extend_support(const FinMetricSpace& z, const std::vector<int>& support,
                                       const std::vector<Rational01>& u) {
  if (u.size() != support.size()) throw Error("extend_support: function not total on support");
  KatetovVerdict kv = is_katetov(subspace(z, support), u);
  if (!kv.ok) throw Error("extend_support: input violates Katetov inequality " + kv.failed_inequality);
  std::vector<Rational01> ext(z.size(), Rational01::one());
  for (size_t p = 0; p < z.size(); ++p)
    for (size_t k = 0; k < support.size(); ++k)
      ext[p] = rat_min(ext[p], z.d(static_cast<int>(p), support[k]).trunc_add(u[k]));
  return ext;
}

std::vector<Rational01> katetov_map(const FinMetricSpace& x, const FinMetricSpace& y,
                                    const std::vector<int>& f, const std::vector<Rational01>& u) {
  if (f.size() != x.size()) throw Error("katetov_map: map not total");
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (x.d(static_cast<int>(i), static_cast<int>(j)) < y.d(f[i], f[j]))
        throw Error("katetov_map: map is not 1-Lipschitz");
  KatetovVerdict kv = is_katetov(x, u);
  if (!kv.ok) throw Error("katetov_map: input violates Katetov inequality " + kv.failed_inequality);
  // Grey image under f, then d_Y-saturation.
  std::vector<Rational01> img(y.size(), Rational01::one());
  for (size_t i = 0; i < x.size(); ++i) img[static_cast<size_t>(f[i])] = rat_min(img[static_cast<size_t>(f[i])], u[i]);
  std::vector<Rational01> sat(y.size(), Rational01::one());
  for (size_t p = 0; p < y.size(); ++p)
    for (size_t q = 0; q < y.size(); ++q)
      sat[p] = rat_min(sat[p], y.d(static_cast<int>(p), static_cast<int>(q)).trunc_add(img[q]));
  return sat;
}

OnePointExtension one_point_extension(const FinMetricSpace& x, const std::vector<Rational01>& u,
                                      const std::string& new_name) {
  KatetovVerdict kv = is_katetov(x, u);
  if (!kv.ok) throw Error("one_point_extension: Katetov inequality " + kv.failed_inequality + " fails");
  OnePointExtension out;
  for (size_t p = 0; p < x.size(); ++p) {
    bool same = true;
    for (size_t a = 0; a < x.size(); ++a)
      if (x.d(static_cast<int>(p), static_cast<int>(a)) != u[a]) {
        same = false;
        break;
      }
    if (same) {
      out.space = x;
      out.already_realized = true;
      out.realizing_point = static_cast<int>(p);
      return out;
    }
  }
  size_t n = x.size();
  std::vector<std::string> pts = x.points;
  pts.push_back(new_name);
  std::vector<Rational01> table((n + 1) * (n + 1), Rational01::zero());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) table[i * (n + 1) + j] = x.d(static_cast<int>(i), static_cast<int>(j));
  for (size_t i = 0; i < n; ++i) {
    table[i * (n + 1) + n] = u[i];
    table[n * (n + 1) + i] = u[i];
  }
  out.space = FinMetricSpace(std::move(pts), std::move(table));
  out.realizing_point = static_cast<int>(n);
  MetricVerdict mv = validate_metric(out.space);
  if (!mv.ok) throw Error("one_point_extension: extension fails metric axiom " + mv.failed_axiom);
  return out;
}

std::vector<std::vector<Rational01>> enumerate_katetov(const FinMetricSpace& f, std::int64_t q) {
  if (q <= 0) throw Error("enumerate_katetov: q must be positive");
  int n = static_cast<int>(f.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (q % f.d(i, j).den() != 0) throw Error("enumerate_katetov: distance denominator does not divide q");
  std::vector<std::vector<Rational01>> out;
  std::vector<Rational01> u(static_cast<size_t>(n));
  auto consistent = [&](int i) {
    for (int j = 0; j < i; ++j) {
      if (f.d(i, j) < u[static_cast<size_t>(i)].dist(u[static_cast<size_t>(j)])) return false;
      if (u[static_cast<size_t>(i)].trunc_add(u[static_cast<size_t>(j)]) < f.d(i, j)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(u);
      return;
    }
    for (std::int64_t k = 0; k <= q; ++k) {
      u[static_cast<size_t>(i)] = Rational01(k, q);
      if (consistent(i)) self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

FinMetricSpace UrysohnTower::level(int n) const {
  if (n < 0 || n >= static_cast<int>(level_sizes.size())) throw Error("tower: level out of range");
  std::vector<int> idx(level_sizes[static_cast<size_t>(n)]);
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return subspace(space, idx);
}

namespace {

// Lexicographic subset streams, smallest size first.
std::vector<std::vector<int>> subsets_by_size(int n, size_t max_support) {
  std::vector<std::vector<int>> out;
  for (int s = 0; s <= n && static_cast<size_t>(s) <= max_support; ++s) {
    std::vector<int> comb(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) comb[static_cast<size_t>(i)] = i;
    while (true) {
      out.push_back(comb);
      if (s == 0) break;
      int i = s - 1;
      while (i >= 0 && comb[static_cast<size_t>(i)] == n - s + i) --i;
      if (i < 0) break;
      ++comb[static_cast<size_t>(i)];
      for (int j = i + 1; j < s; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace

UrysohnTower urysohn_approx(const FinMetricSpace& seed, std::int64_t q, int depth, size_t budget,
                            size_t max_support) {
  MetricVerdict mv = validate_metric(seed);
  if (!mv.ok) throw Error("urysohn_approx: seed fails metric axiom " + mv.failed_axiom);
  if (depth < 0) throw Error("urysohn_approx: negative depth");
  UrysohnTower t;
  t.space = seed;
  t.level_sizes = {seed.size()};
  t.provenance.assign(seed.size(), std::nullopt);
  t.q = q;
  t.depth = depth;
  t.budget = budget;
  for (int n = 0; n < depth; ++n) {
    const FinMetricSpace base = t.space;  // == level n
    int bn = static_cast<int>(base.size());
    struct Pending {
      TowerPointLog log;
      std::vector<Rational01> ext;
    };
    std::vector<Pending> added;
    bool realized;
    for (const auto& supp : subsets_by_size(bn, max_support)) {
      FinMetricSpace fs = subspace(base, supp);
      for (const auto& u : enumerate_katetov(fs, q)) {
        std::vector<Rational01> ext = extend_support(base, supp, u);
        realized = false;
        for (int p = 0; p < bn && !realized; ++p) {
          realized = true;
          for (int a = 0; a < bn; ++a)
            if (base.d(p, a) != ext[static_cast<size_t>(a)]) {
              realized = false;
              break;
            }
        }
        for (const auto& pend : added) {
          if (realized) break;
          realized = pend.ext == ext;
        }
        if (realized) continue;
        if (t.space.size() + added.size() + 1 > budget) {
          t.complete = false;
          break;
        }
        added.push_back(Pending{TowerPointLog{n, supp, u}, std::move(ext)});
      }
      if (!t.complete) break;
    }
    // Adjoin the new points with sup-metric distances over level n.
    size_t nn = base.size() + added.size();
    std::vector<std::string> pts = base.points;
    for (size_t k = 0; k < added.size(); ++k)
      pts.push_back("L" + std::to_string(n + 1) + "." + std::to_string(k));
    std::vector<Rational01> table(nn * nn, Rational01::zero());
    for (int i = 0; i < bn; ++i)
      for (int j = 0; j < bn; ++j) table[static_cast<size_t>(i) * nn + static_cast<size_t>(j)] = base.d(i, j);
    for (size_t k = 0; k < added.size(); ++k)
      for (int a = 0; a < bn; ++a) {
        table[(base.size() + k) * nn + static_cast<size_t>(a)] = added[k].ext[static_cast<size_t>(a)];
        table[static_cast<size_t>(a) * nn + base.size() + k] = added[k].ext[static_cast<size_t>(a)];
      }
    for (size_t k = 0; k < added.size(); ++k)
      for (size_t l = 0; l < added.size(); ++l)
        if (k != l)
          table[(base.size() + k) * nn + base.size() + l] = katetov_distance(added[k].ext, added[l].ext);
    t.space = FinMetricSpace(std::move(pts), std::move(table));
    mv = validate_metric(t.space);
    if (!mv.ok) throw Error("urysohn_approx: level fails metric axiom " + mv.failed_axiom);
    for (auto& pend : added) t.provenance.emplace_back(std::move(pend.log));
    t.level_sizes.push_back(t.space.size());
    if (!t.complete) break;
  }
  return t;
}

ExtensionCheck extension_property_check(const UrysohnTower& tower, int n, size_t max_support) {
  ExtensionCheck out;
  if (n < 0 || n > tower.depth_built()) throw Error("extension_property_check: level out of range");
  int next = std::min(n + 1, tower.depth_built());
  FinMetricSpace base = tower.level(n);
  size_t next_size = tower.level_sizes[static_cast<size_t>(next)];
  for (const auto& supp : subsets_by_size(static_cast<int>(base.size()), max_support)) {
    FinMetricSpace fs = subspace(base, supp);
    for (const auto& u : enumerate_katetov(fs, tower.q)) {
      bool realized = false;
      for (size_t p = 0; p < next_size && !realized; ++p) {
        realized = true;
        for (size_t a = 0; a < supp.size(); ++a)
          if (tower.space.d(static_cast<int>(p), supp[a]) != u[a]) {
            realized = false;
            break;
          }
      }
      if (!realized) {
        out.witness_support = supp;
        out.witness_values = u;
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

ExactExtensionResult exact_extension(const FinMetricSpace& x, const std::vector<int>& sections,
                                     const std::vector<int>& support,
                                     const std::vector<Rational01>& u) {
  ExactExtensionResult res;
  if (sections.size() != x.size()) throw Error("exact_extension: sections must list every point");
  KatetovVerdict kv = is_katetov(subspace(x, support), u);
  if (!kv.ok) throw Error("exact_extension: Katetov inequality " + kv.failed_inequality + " fails");
  auto discrepancy = [&](int p) {
    Rational01 m = Rational01::zero();
    for (size_t a = 0; a < support.size(); ++a) m = rat_max(m, u[a].dist(x.d(p, support[a])));
    return m;
  };
  int t = sections[0];
  for (int stage = 0;; ++stage) {
    if (discrepancy(t).is_zero()) {
      res.ok = true;
      res.point = t;
      res.stages = stage;
      return res;
    }
    // Auxiliary function v over F u {T}: u on F, the current max discrepancy at T.
    bool t_in_f = std::find(support.begin(), support.end(), t) != support.end();
    Rational01 vt = discrepancy(t);
    if (stage >= 62) {
      res.failed_tolerance = Rational01::pow2(62);
      return res;
    }
    Rational01 tol = Rational01::pow2(static_cast<unsigned>(stage + 1));
    int pick = -1;
    for (int s : sections) {
      bool within = true;
      for (size_t a = 0; a < support.size() && within; ++a)
        within = u[a].dist(x.d(s, support[a])) <= tol;
      if (within && !t_in_f) within = vt.dist(x.d(s, t)) <= tol;
      if (within) {
        pick = s;
        break;
      }
    }
    if (pick < 0) {
      res.failed_tolerance = tol;
      return res;
    }
    t = pick;
  }
}

TowerMap tower_map(const UrysohnTower& tx, const UrysohnTower& ty, const std::vector<int>& seed_map) {
  if (tx.q != ty.q || tx.depth != ty.depth || tx.budget != ty.budget || !tx.complete || !ty.complete)
    throw Error("tower_map: tower parameters differ or towers are incomplete");
  if (tx.level_sizes.size() != ty.level_sizes.size())
    throw Error("tower_map: towers have different built depths");
  size_t seed_x = tx.level_sizes[0], seed_y = ty.level_sizes[0];
  if (seed_map.size() != seed_x || seed_x != seed_y)
    throw Error("tower_map: seed map does not match seed sizes");
  for (size_t i = 0; i < seed_x; ++i)
    for (size_t j = 0; j < seed_x; ++j)
      if (tx.space.d(static_cast<int>(i), static_cast<int>(j)) != ty.space.d(seed_map[i], seed_map[j]))
        throw Error("tower_map: seed map is not an isometry");
  TowerMap out;
  std::vector<int> cur(seed_map);
  out.level_maps.push_back(cur);
  for (size_t lvl = 1; lvl < tx.level_sizes.size(); ++lvl) {
    size_t nx = tx.level_sizes[lvl], ny = ty.level_sizes[lvl];
    size_t px = tx.level_sizes[lvl - 1], py = ty.level_sizes[lvl - 1];
    if (nx != ny) throw Error("tower_map: level sizes differ");
    std::vector<int> inv(py, -1);
    for (size_t i = 0; i < px; ++i) inv[static_cast<size_t>(cur[i])] = static_cast<int>(i);
    cur.resize(nx, -1);
    std::vector<bool> used(ny, false);
    for (size_t i = 0; i < px; ++i) used[static_cast<size_t>(cur[i])] = true;
    for (size_t p = px; p < nx; ++p) {
      int match = -1, candidates = 0;
      for (size_t qy = py; qy < ny; ++qy) {
        if (used[qy]) continue;
        bool same = true;
        for (size_t b = 0; b < py && same; ++b)
          same = ty.space.d(static_cast<int>(qy), static_cast<int>(b)) ==
                 tx.space.d(static_cast<int>(p), inv[b]);
        if (same) {
          ++candidates;
          if (match < 0) match = static_cast<int>(qy);
        }
      }
      if (match < 0) throw Error("tower_map: no transport target for a tower point");
      if (candidates > 1) out.unique = false;
      cur[p] = match;
      used[static_cast<size_t>(match)] = true;
    }
    // The transported map must be an isometry of whole levels.
    for (size_t i = 0; i < nx; ++i)
      for (size_t j = 0; j < nx; ++j)
        if (tx.space.d(static_cast<int>(i), static_cast<int>(j)) != ty.space.d(cur[i], cur[j]))
          throw Error("tower_map: transported map is not an isometry");
    out.level_maps.push_back(cur);
  }
  return out;
}

}  // namespace topogrey
