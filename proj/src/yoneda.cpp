#include "topogrey/yoneda.hpp"

#include <algorithm>

namespace topogrey {

bool CanonicalStructure::sort_at(int u, int x) const {
  return cosets[static_cast<size_t>(u)].unit_class[static_cast<size_t>(x)] >= 0;
}

std::vector<std::vector<int>> default_sections(const FinGroupoid& g, const Subgroupoid& u) {
  std::vector<std::vector<int>> out;
  std::vector<int> us = u.morphisms;
  out.push_back(us);  // the unit section, i.e. U itself
  CosetSpace cs = coset_space(g, u);
  for (const auto& cls : cs.classes)
    if (cls != us) out.push_back(cls);
  return out;
}

CanonicalStructure canonical_structure(const FinGroupoid& g, std::vector<Subgroupoid> subs,
                                       std::vector<std::vector<std::vector<int>>> sections) {
  CanonicalStructure cs;
  cs.g = &g;
  cs.subs = std::move(subs);
  if (sections.size() != cs.subs.size()) throw Error("canonical_structure: sections do not match subgroupoids");
  cs.sections = std::move(sections);
  // Preconditions: each subgroupoid valid; each S is U-invariant U-small with
  // U itself among the sections; the subgroupoids cover every object.
  std::vector<bool> covered(g.object_count(), false);
  for (size_t u = 0; u < cs.subs.size(); ++u) {
    if (!is_subgroupoid(g, cs.subs[u].morphisms)) throw Error("canonical_structure: entry is not a subgroupoid");
    for (int x : cs.subs[u].unit_objects(g)) covered[static_cast<size_t>(x)] = true;
    bool has_unit_section = false;
    for (const auto& s : cs.sections[u]) {
      std::vector<int> ss = s;
      std::sort(ss.begin(), ss.end());
      if (ss == cs.subs[u].morphisms) has_unit_section = true;
      if (set_product(g, s, cs.subs[u].morphisms) != ss)
        throw Error("canonical_structure: section is not invariant");
      for (int m : set_product(g, set_inverse(g, s), s))
        if (!cs.subs[u].contains(m)) throw Error("canonical_structure: section is not small");
    }
    if (!has_unit_section) throw Error("canonical_structure: section family is missing the unit section");
    cs.cosets.push_back(coset_space(g, cs.subs[u]));
  }
  for (size_t x = 0; x < g.object_count(); ++x)
    if (!covered[x]) throw Error("canonical_structure: subgroupoids do not cover object " + g.objects[x]);
  // Basis check: the sections jointly cover every morphism.
  std::vector<bool> hit(g.size(), false);
  for (const auto& fam : cs.sections)
    for (const auto& s : fam)
      for (int m : s) hit[static_cast<size_t>(m)] = true;
  for (size_t m = 0; m < g.size(); ++m)
    if (!hit[m]) throw Error("canonical_structure: sections do not cover morphism " + g.morphisms[m]);

  // Function symbols: f_{U,V,S} for U <= S*S^-1, S in sections[V].
  for (int u = 0; u < cs.sort_count(); ++u)
    for (int v = 0; v < cs.sort_count(); ++v)
      for (size_t s = 0; s < cs.sections[static_cast<size_t>(v)].size(); ++s) {
        RightMultResult r = right_mult_map(g, cs.subs[static_cast<size_t>(u)], cs.subs[static_cast<size_t>(v)],
                                           cs.sections[static_cast<size_t>(v)][s]);
        if (r.ok) cs.fns.push_back({u, v, static_cast<int>(s), std::move(r.map)});
      }

  // Materialize the fiberwise family over G^0.
  cs.fiber_classes.assign(cs.subs.size(), std::vector<std::vector<int>>(g.object_count()));
  cs.class_pos.assign(cs.subs.size(), {});
  DiscreteStructureFamily& fam = cs.family;
  fam.base = g.objects;
  for (size_t u = 0; u < cs.subs.size(); ++u) fam.sorts.push_back("G/U" + std::to_string(u));
  fam.fibers.assign(cs.subs.size(), std::vector<std::vector<std::string>>(g.object_count()));
  for (size_t u = 0; u < cs.subs.size(); ++u) {
    cs.class_pos[u].assign(cs.cosets[u].classes.size(), -1);
    for (size_t c = 0; c < cs.cosets[u].classes.size(); ++c) {
      int x = cs.cosets[u].tau[c];
      cs.class_pos[u][c] = static_cast<int>(cs.fiber_classes[u][static_cast<size_t>(x)].size());
      cs.fiber_classes[u][static_cast<size_t>(x)].push_back(static_cast<int>(c));
      fam.fibers[u][static_cast<size_t>(x)].push_back(g.morphisms[static_cast<size_t>(cs.cosets[u].classes[c][0])] +
                                                      "*U" + std::to_string(u));
    }
  }
  for (const auto& fn : cs.fns) {
    DiscreteStructureFamily::Function f;
    f.name = "f(U" + std::to_string(fn.u) + ",U" + std::to_string(fn.v) + ",S" + std::to_string(fn.s) + ")";
    f.arity = {fn.u};
    f.value_sort = fn.v;
    f.graph.resize(g.object_count());
    for (size_t x = 0; x < g.object_count(); ++x)
      for (size_t i = 0; i < cs.fiber_classes[static_cast<size_t>(fn.u)][x].size(); ++i) {
        int cls = cs.fiber_classes[static_cast<size_t>(fn.u)][x][i];
        int img = fn.map[static_cast<size_t>(cls)];
        f.graph[x][{static_cast<int>(i)}] = cs.class_pos[static_cast<size_t>(fn.v)][static_cast<size_t>(img)];
      }
    fam.functions.push_back(std::move(f));
  }
  fam.validate();
  return cs;
}

CosetFamily yoneda_phi(const CanonicalStructure& cs, int x, int y, const FiberMap& hom) {
  CosetFamily fam(static_cast<size_t>(cs.sort_count()), -1);
  for (int u = 0; u < cs.sort_count(); ++u) {
    if (!cs.sort_at(u, x)) continue;
    int unit_cls = cs.cosets[static_cast<size_t>(u)].unit_class[static_cast<size_t>(x)];
    int pos = cs.class_pos[static_cast<size_t>(u)][static_cast<size_t>(unit_cls)];
    int img_pos = hom[static_cast<size_t>(u)][static_cast<size_t>(pos)];
    fam[static_cast<size_t>(u)] =
        cs.fiber_classes[static_cast<size_t>(u)][static_cast<size_t>(y)][static_cast<size_t>(img_pos)];
  }
  return fam;
}

namespace {

// Is U (as a sorted morphism set) a subset of V?
bool subset(const std::vector<int>& u, const std::vector<int>& v) {
  return std::includes(v.begin(), v.end(), u.begin(), u.end());
}

}  // namespace

bool family_coherent(const CanonicalStructure& cs, int x, const CosetFamily& fam,
                     std::pair<int, int>* bad_pair) {
  for (int u = 0; u < cs.sort_count(); ++u) {
    if (!cs.sort_at(u, x)) continue;
    for (int v = 0; v < cs.sort_count(); ++v) {
      if (u == v || !cs.sort_at(v, x)) continue;
      if (!subset(cs.subs[static_cast<size_t>(u)].morphisms, cs.subs[static_cast<size_t>(v)].morphisms)) continue;
      // pi_{U,V}(a_U) = a_V: the V-class of any representative of a_U.
      int rep = cs.cosets[static_cast<size_t>(u)].classes[static_cast<size_t>(fam[static_cast<size_t>(u)])][0];
      if (cs.cosets[static_cast<size_t>(v)].class_of[static_cast<size_t>(rep)] != fam[static_cast<size_t>(v)]) {
        if (bad_pair) *bad_pair = {u, v};
        return false;
      }
    }
  }
  return true;
}

std::vector<CosetFamily> enumerate_coherent_families(const CanonicalStructure& cs, int x, int y) {
  std::vector<int> active;
  for (int u = 0; u < cs.sort_count(); ++u)
    if (cs.sort_at(u, x)) active.push_back(u);
  std::vector<CosetFamily> out;
  CosetFamily fam(static_cast<size_t>(cs.sort_count()), -1);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == active.size()) {
      if (family_coherent(cs, x, fam)) out.push_back(fam);
      return;
    }
    int u = active[i];
    for (int cls : cs.fiber_classes[static_cast<size_t>(u)][static_cast<size_t>(y)]) {
      fam[static_cast<size_t>(u)] = cls;
      self(self, i + 1);
    }
    fam[static_cast<size_t>(u)] = -1;
  };
  rec(rec, 0);
  return out;
}

FiberMap yoneda_psi(const CanonicalStructure& cs, int x, int y, const CosetFamily& fam) {
  const FinGroupoid& g = *cs.g;
  std::pair<int, int> bad;
  if (!family_coherent(cs, x, fam, &bad))
    throw Error("yoneda_psi: incoherent family at sorts U" + std::to_string(bad.first) + " <= U" +
                std::to_string(bad.second));
  FiberMap hom(static_cast<size_t>(cs.sort_count()));
  for (int u = 0; u < cs.sort_count(); ++u) {
    const auto& fiber_x = cs.fiber_classes[static_cast<size_t>(u)][static_cast<size_t>(x)];
    hom[static_cast<size_t>(u)].assign(fiber_x.size(), -1);
    for (size_t bi = 0; bi < fiber_x.size(); ++bi) {
      const std::vector<int>& b = cs.cosets[static_cast<size_t>(u)].classes[static_cast<size_t>(fiber_x[bi])];
      int result = -1;
      for (size_t si = 0; si < cs.sections[static_cast<size_t>(u)].size(); ++si) {
        std::vector<int> s = cs.sections[static_cast<size_t>(u)][si];
        std::sort(s.begin(), s.end());
        if (!subset(b, s)) continue;
        std::vector<int> ssinv = set_product(g, s, set_inverse(g, s));
        for (int v = 0; v < cs.sort_count(); ++v) {
          if (!cs.sort_at(v, x)) continue;
          if (!subset(cs.subs[static_cast<size_t>(v)].morphisms, ssinv)) continue;
          // a_V * S, evaluated via any representative.
          const std::vector<int>& av =
              cs.cosets[static_cast<size_t>(v)].classes[static_cast<size_t>(fam[static_cast<size_t>(v)])];
          for (int k : av)
            for (int sm : s) {
              if (!g.composable(k, sm)) continue;
              int cls = cs.cosets[static_cast<size_t>(u)].class_of[static_cast<size_t>(g.mul(k, sm))];
              if (cls < 0) throw Error("yoneda_psi: product leaves the coset domain");
              if (result < 0) result = cls;
              if (cls != result)
                throw Error("yoneda_psi: choice of (S, V) is not constant; side conditions violated");
            }
        }
      }
      if (result < 0) throw Error("yoneda_psi: insufficient basis for a coset of sort U" + std::to_string(u));
      hom[static_cast<size_t>(u)][bi] =
          cs.class_pos[static_cast<size_t>(u)][static_cast<size_t>(result)];
    }
  }
  return hom;
}

FiberMap eta_of(const CanonicalStructure& cs, int g_mor) {
  const FinGroupoid& g = *cs.g;
  int x = g.src[static_cast<size_t>(g_mor)], y = g.tgt[static_cast<size_t>(g_mor)];
  FiberMap hom(static_cast<size_t>(cs.sort_count()));
  for (int u = 0; u < cs.sort_count(); ++u) {
    const auto& fiber_x = cs.fiber_classes[static_cast<size_t>(u)][static_cast<size_t>(x)];
    hom[static_cast<size_t>(u)].assign(fiber_x.size(), -1);
    for (size_t bi = 0; bi < fiber_x.size(); ++bi) {
      int img = cs.cosets[static_cast<size_t>(u)].left_act[static_cast<size_t>(g_mor)]
                                                          [static_cast<size_t>(fiber_x[bi])];
      if (img < 0) throw Error("eta_of: left action undefined");
      hom[static_cast<size_t>(u)][bi] = cs.class_pos[static_cast<size_t>(u)][static_cast<size_t>(img)];
    }
  }
  (void)y;
  return hom;
}

EtaReport verify_eta_iso(const CanonicalStructure& cs) {
  EtaReport rep;
  const FinGroupoid& g = *cs.g;
  // Functoriality: eta(unit) = identity maps, eta(g*h) = eta(g) o eta(h).
  rep.functorial = true;
  for (size_t x = 0; x < g.object_count(); ++x) {
    FiberMap e = eta_of(cs, g.unit[x]);
    for (const auto& per_sort : e)
      for (size_t i = 0; i < per_sort.size(); ++i)
        if (per_sort[i] != static_cast<int>(i)) rep.functorial = false;
  }
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t b = 0; b < g.size(); ++b) {
      if (!g.composable(static_cast<int>(a), static_cast<int>(b))) continue;
      FiberMap ea = eta_of(cs, static_cast<int>(a));
      FiberMap eb = eta_of(cs, static_cast<int>(b));
      FiberMap eab = eta_of(cs, g.mul(static_cast<int>(a), static_cast<int>(b)));
      for (size_t u = 0; u < ea.size(); ++u)
        for (size_t i = 0; i < eb[u].size(); ++i)
          if (eab[u][i] != ea[u][static_cast<size_t>(eb[u][i])]) rep.functorial = false;
    }
  if (!rep.functorial) {
    rep.failure = "eta is not functorial";
    return rep;
  }
  rep.phi_psi_roundtrip = true;
  bool bijective = true;
  for (size_t x = 0; x < g.object_count() && bijective; ++x)
    for (size_t y = 0; y < g.object_count() && bijective; ++y) {
      auto gh = g.hom(static_cast<int>(x), static_cast<int>(y));
      auto isos = enumerate_isos(cs.family, static_cast<int>(x), static_cast<int>(y));
      rep.hom_counts.emplace_back(static_cast<int>(x), static_cast<int>(y), gh.size(), isos.size());
      std::vector<FiberMap> images;
      for (int m : gh) images.push_back(eta_of(cs, m));
      // Injectivity.
      for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j)
          if (images[i] == images[j]) {
            bijective = false;
            rep.failure = "eta is not injective";
          }
      // Surjectivity onto the enumerated isomorphisms.
      for (const auto& iso : isos)
        if (std::find(images.begin(), images.end(), iso) == images.end()) {
          bijective = false;
          rep.failure = "eta is not surjective onto Iso(M)";
        }
      if (images.size() != isos.size()) {
        bijective = false;
        if (rep.failure.empty()) rep.failure = "hom-set counts differ";
      }
      // Phi/Psi round trips on every coherent family and every morphism.
      auto fams = enumerate_coherent_families(cs, static_cast<int>(x), static_cast<int>(y));
      for (const auto& fam : fams) {
        FiberMap h = yoneda_psi(cs, static_cast<int>(x), static_cast<int>(y), fam);
        if (yoneda_phi(cs, static_cast<int>(x), static_cast<int>(y), h) != fam) {
          rep.phi_psi_roundtrip = false;
          rep.failure = "Phi(Psi(a)) != a";
        }
      }
      for (int m : gh) {
        FiberMap h = eta_of(cs, m);
        CosetFamily fam = yoneda_phi(cs, static_cast<int>(x), static_cast<int>(y), h);
        if (!family_coherent(cs, static_cast<int>(x), fam)) {
          rep.phi_psi_roundtrip = false;
          rep.failure = "Phi(eta(g)) incoherent";
          continue;
        }
        if (yoneda_psi(cs, static_cast<int>(x), static_cast<int>(y), fam) != h) {
          rep.phi_psi_roundtrip = false;
          rep.failure = "Psi(Phi(h)) != h";
        }
      }
      // |Hom| = |lim| cross-check: coherent families vs enumerated homs.
      auto homs = enumerate_homs(cs.family, static_cast<int>(x), static_cast<int>(y));
      if (homs.size() != fams.size()) {
        bijective = false;
        rep.failure = "|Hom(x,y)| != |lim (G/U)_y|";
      }
    }
  rep.ok = bijective && rep.phi_psi_roundtrip;
  return rep;
}

}  // namespace topogrey
