#include "topogrey/structure.hpp"

#include <algorithm>
#include <numeric>

namespace topogrey {

void DiscreteStructureFamily::validate() const {
  size_t nb = base.size();
  if (fibers.size() != sorts.size()) throw Error("structure family: fiber table does not match sorts");
  for (const auto& per_sort : fibers)
    if (per_sort.size() != nb) throw Error("structure family: fiber table does not match base");
  for (const auto& r : relations) {
    if (r.tuples.size() != nb) throw Error("structure family: relation '" + r.name + "' not fiberwise total");
    for (size_t x = 0; x < nb; ++x)
      for (const auto& t : r.tuples[x]) {
        if (t.size() != r.arity.size()) throw Error("structure family: arity violated in '" + r.name + "'");
        for (size_t i = 0; i < t.size(); ++i)
          if (t[i] < 0 || static_cast<size_t>(t[i]) >= fiber_size(r.arity[i], static_cast<int>(x)))
            throw Error("structure family: tuple element out of range in '" + r.name + "'");
      }
  }
  for (const auto& f : functions) {
    if (f.graph.size() != nb) throw Error("structure family: function '" + f.name + "' not fiberwise total");
    for (size_t x = 0; x < nb; ++x) {
      size_t expected = 1;
      for (int s : f.arity) expected *= fiber_size(s, static_cast<int>(x));
      if (f.graph[x].size() != expected)
        throw Error("structure family: function '" + f.name + "' not total on its domain");
      for (const auto& [args, val] : f.graph[x]) {
        if (args.size() != f.arity.size()) throw Error("structure family: arity violated in '" + f.name + "'");
        for (size_t i = 0; i < args.size(); ++i)
          if (args[i] < 0 || static_cast<size_t>(args[i]) >= fiber_size(f.arity[i], static_cast<int>(x)))
            throw Error("structure family: argument out of range in '" + f.name + "'");
        if (val < 0 || static_cast<size_t>(val) >= fiber_size(f.value_sort, static_cast<int>(x)))
          throw Error("structure family: value out of range in '" + f.name + "'");
      }
    }
  }
}

namespace {

struct HomSearch {
  const DiscreteStructureFamily& m;
  int x, y;
  bool iso;
  std::vector<std::vector<int>> map;      // per sort, -1 unset
  std::vector<std::vector<bool>> used;    // per sort (iso mode)
  std::vector<std::pair<int, int>> slots; // (sort, element) in assignment order
  std::vector<FiberMap>* out;

  bool tuple_ready(const std::vector<int>& arity, const std::vector<int>& t) const {
    for (size_t i = 0; i < t.size(); ++i)
      if (map[static_cast<size_t>(arity[i])][static_cast<size_t>(t[i])] < 0) return false;
    return true;
  }

  std::vector<int> tuple_image(const std::vector<int>& arity, const std::vector<int>& t) const {
    std::vector<int> img(t.size());
    for (size_t i = 0; i < t.size(); ++i)
      img[i] = map[static_cast<size_t>(arity[i])][static_cast<size_t>(t[i])];
    return img;
  }

  bool consistent() const {
    for (const auto& r : m.relations) {
      const auto& ty = r.tuples[static_cast<size_t>(y)];
      for (const auto& t : r.tuples[static_cast<size_t>(x)]) {
        if (!tuple_ready(r.arity, t)) continue;
        if (!std::binary_search(ty.begin(), ty.end(), tuple_image(r.arity, t))) return false;
      }
    }
    for (const auto& f : m.functions) {
      for (const auto& [args, val] : f.graph[static_cast<size_t>(x)]) {
        if (!tuple_ready(f.arity, args)) continue;
        int vimg = map[static_cast<size_t>(f.value_sort)][static_cast<size_t>(val)];
        if (vimg < 0) continue;
        auto it = f.graph[static_cast<size_t>(y)].find(tuple_image(f.arity, args));
        if (it == f.graph[static_cast<size_t>(y)].end() || it->second != vimg) return false;
      }
    }
    return true;
  }

  bool leaf_ok() const {
    if (!iso) {
      // Function values must also be assigned; with a total assignment they are.
      return true;
    }
    // For isomorphisms, relation tuple sets must correspond exactly.
    for (const auto& r : m.relations)
      if (r.tuples[static_cast<size_t>(x)].size() != r.tuples[static_cast<size_t>(y)].size()) return false;
    return true;
  }

  void rec(size_t slot) {
    if (slot == slots.size()) {
      if (leaf_ok()) out->push_back(map);
      return;
    }
    auto [s, e] = slots[slot];
    size_t ny = m.fiber_size(s, y);
    for (size_t c = 0; c < ny; ++c) {
      if (iso && used[static_cast<size_t>(s)][c]) continue;
      map[static_cast<size_t>(s)][static_cast<size_t>(e)] = static_cast<int>(c);
      if (iso) used[static_cast<size_t>(s)][c] = true;
      if (consistent()) rec(slot + 1);
      if (iso) used[static_cast<size_t>(s)][c] = false;
      map[static_cast<size_t>(s)][static_cast<size_t>(e)] = -1;
    }
  }
};

std::vector<FiberMap> enumerate_maps(const DiscreteStructureFamily& m, int x, int y, bool iso) {
  m.validate();
  std::vector<FiberMap> out;
  HomSearch hs{m, x, y, iso, {}, {}, {}, &out};
  hs.map.resize(m.sorts.size());
  hs.used.resize(m.sorts.size());
  for (size_t s = 0; s < m.sorts.size(); ++s) {
    size_t nx = m.fiber_size(static_cast<int>(s), x);
    if (iso && nx != m.fiber_size(static_cast<int>(s), y)) return out;
    hs.map[s].assign(nx, -1);
    hs.used[s].assign(m.fiber_size(static_cast<int>(s), y), false);
    for (size_t e = 0; e < nx; ++e) hs.slots.emplace_back(static_cast<int>(s), static_cast<int>(e));
  }
  hs.rec(0);
  return out;
}

}  // namespace

std::vector<FiberMap> enumerate_homs(const DiscreteStructureFamily& m, int x, int y) {
  return enumerate_maps(m, x, y, false);
}

std::vector<FiberMap> enumerate_isos(const DiscreteStructureFamily& m, int x, int y) {
  return enumerate_maps(m, x, y, true);
}

bool is_fiber_hom(const DiscreteStructureFamily& m, int x, int y, const FiberMap& f) {
  if (f.size() != m.sorts.size()) return false;
  for (size_t s = 0; s < m.sorts.size(); ++s) {
    if (f[s].size() != m.fiber_size(static_cast<int>(s), x)) return false;
    for (int v : f[s])
      if (v < 0 || static_cast<size_t>(v) >= m.fiber_size(static_cast<int>(s), y)) return false;
  }
  auto image = [&](const std::vector<int>& arity, const std::vector<int>& t) {
    std::vector<int> img(t.size());
    for (size_t i = 0; i < t.size(); ++i) img[i] = f[static_cast<size_t>(arity[i])][static_cast<size_t>(t[i])];
    return img;
  };
  for (const auto& r : m.relations)
    for (const auto& t : r.tuples[static_cast<size_t>(x)])
      if (!std::binary_search(r.tuples[static_cast<size_t>(y)].begin(), r.tuples[static_cast<size_t>(y)].end(),
                              image(r.arity, t)))
        return false;
  for (const auto& fn : m.functions)
    for (const auto& [args, val] : fn.graph[static_cast<size_t>(x)]) {
      auto it = fn.graph[static_cast<size_t>(y)].find(image(fn.arity, args));
      if (it == fn.graph[static_cast<size_t>(y)].end() ||
          it->second != f[static_cast<size_t>(fn.value_sort)][static_cast<size_t>(val)])
        return false;
    }
  return true;
}

bool is_fiber_iso(const DiscreteStructureFamily& m, int x, int y, const FiberMap& f) {
  if (!is_fiber_hom(m, x, y, f)) return false;
  FiberMap inv(m.sorts.size());
  for (size_t s = 0; s < m.sorts.size(); ++s) {
    size_t ny = m.fiber_size(static_cast<int>(s), y);
    if (f[s].size() != m.fiber_size(static_cast<int>(s), x) || f[s].size() != ny) return false;
    inv[s].assign(ny, -1);
    for (size_t e = 0; e < f[s].size(); ++e) {
      if (inv[s][static_cast<size_t>(f[s][e])] >= 0) return false;
      inv[s][static_cast<size_t>(f[s][e])] = static_cast<int>(e);
    }
  }
  return is_fiber_hom(m, y, x, inv);
}

DiscreteStructureFamily add_constants(const DiscreteStructureFamily& m, int k) {
  if (k < 1) throw Error("add_constants: k must be >= 1");
  m.validate();
  size_t nb = m.base.size();
  DiscreteStructureFamily out;
  out.base = m.base;
  out.sorts = {"u"};
  out.fibers.resize(1);
  out.fibers[0].resize(nb);
  // offset[s][x]: first combined index of sort s in fiber x.
  std::vector<std::vector<int>> offset(m.sorts.size(), std::vector<int>(nb, 0));
  for (size_t x = 0; x < nb; ++x) {
    int pos = 0;
    for (size_t s = 0; s < m.sorts.size(); ++s) {
      offset[s][x] = pos;
      for (const auto& name : m.fibers[s][x]) {
        out.fibers[0][x].push_back(m.sorts[s] + ":" + name);
        ++pos;
      }
    }
    for (int i = 0; i < k; ++i) out.fibers[0][x].push_back("c" + std::to_string(i));
  }
  auto remap = [&](const std::vector<int>& arity, const std::vector<int>& t, size_t x) {
    std::vector<int> img(t.size());
    for (size_t i = 0; i < t.size(); ++i) img[i] = offset[static_cast<size_t>(arity[i])][x] + t[i];
    return img;
  };
  for (const auto& r : m.relations) {
    DiscreteStructureFamily::Relation nr;
    nr.name = r.name;
    nr.arity.assign(r.arity.size(), 0);
    nr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x) {
      for (const auto& t : r.tuples[x]) nr.tuples[x].push_back(remap(r.arity, t, x));
      std::sort(nr.tuples[x].begin(), nr.tuples[x].end());
    }
    out.relations.push_back(std::move(nr));
  }
  for (size_t s = 0; s < m.sorts.size(); ++s) {
    DiscreteStructureFamily::Relation pr;
    pr.name = "P:" + m.sorts[s];
    pr.arity = {0};
    pr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x)
      for (size_t e = 0; e < m.fibers[s][x].size(); ++e)
        pr.tuples[x].push_back({offset[s][x] + static_cast<int>(e)});
    out.relations.push_back(std::move(pr));
  }
  for (int i = 0; i < k; ++i) {
    DiscreteStructureFamily::Relation cr;
    cr.name = "C" + std::to_string(i);
    cr.arity = {0};
    cr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x) {
      int base_size = 0;
      for (size_t s = 0; s < m.sorts.size(); ++s) base_size += static_cast<int>(m.fibers[s][x].size());
      cr.tuples[x].push_back({base_size + i});
    }
    out.relations.push_back(std::move(cr));
  }
  for (const auto& fn : m.functions) {
    DiscreteStructureFamily::Relation gr;
    gr.name = "graph:" + fn.name;
    gr.arity.assign(fn.arity.size() + 1, 0);
    gr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x) {
      for (const auto& [args, val] : fn.graph[x]) {
        std::vector<int> t = remap(fn.arity, args, x);
        t.push_back(offset[static_cast<size_t>(fn.value_sort)][x] + val);
        gr.tuples[x].push_back(std::move(t));
      }
      std::sort(gr.tuples[x].begin(), gr.tuples[x].end());
    }
    out.relations.push_back(std::move(gr));
  }
  out.validate();
  return out;
}

bool constants_preserve_isos(const DiscreteStructureFamily& m, const DiscreteStructureFamily& mk,
                             int k, int x, int y) {
  auto orig = enumerate_isos(m, x, y);
  auto ext = enumerate_isos(mk, x, y);
  if (orig.size() != ext.size()) return false;
  // The canonical extension of each original iso must appear among the
  // extended ones (disjoint union of the sort maps, identity on constants).
  for (const auto& f : orig) {
    std::vector<int> big;
    int off_y = 0;
    std::vector<int> offs_y(m.sorts.size());
    for (size_t s = 0; s < m.sorts.size(); ++s) {
      offs_y[s] = off_y;
      off_y += static_cast<int>(m.fibers[s][static_cast<size_t>(y)].size());
    }
    for (size_t s = 0; s < m.sorts.size(); ++s)
      for (int img : f[s]) big.push_back(offs_y[s] + img);
    for (int i = 0; i < k; ++i) big.push_back(off_y + i);
    FiberMap candidate{big};
    if (!is_fiber_iso(mk, x, y, candidate)) return false;
    if (std::find(ext.begin(), ext.end(), candidate) == ext.end()) return false;
  }
  return true;
}

Structure pushforward(const Structure& s, const std::vector<int>& perm) {
  Structure out = s;
  for (size_t r = 0; r < s.rel_tuples.size(); ++r) {
    for (auto& t : out.rel_tuples[r])
      for (auto& v : t) v = perm[static_cast<size_t>(v)];
    std::sort(out.rel_tuples[r].begin(), out.rel_tuples[r].end());
  }
  return out;
}

namespace {

// Lexicographically k-th ordered tuple of `len` distinct values in {0..n-1}.
std::vector<int> nth_injection(int n, int len, long long k) {
  std::vector<int> avail(static_cast<size_t>(n));
  std::iota(avail.begin(), avail.end(), 0);
  std::vector<int> out;
  long long remaining = 1;
  for (int i = 0; i < len; ++i) remaining *= n - i;
  for (int i = 0; i < len; ++i) {
    remaining /= n - i;
    long long idx = k / remaining;
    k %= remaining;
    out.push_back(avail[static_cast<size_t>(idx)]);
    avail.erase(avail.begin() + static_cast<long>(idx));
  }
  return out;
}

}  // namespace

LogicActionFunctor uniformize(const DiscreteStructureFamily& m, UniformizeMode mode, int k_extra) {
  if (k_extra < 1) throw Error("uniformize: k_extra must be >= 1");
  m.validate();
  size_t nb = m.base.size();
  std::vector<int> sizes(nb, 0);
  int maxs = 0;
  for (size_t x = 0; x < nb; ++x) {
    for (size_t s = 0; s < m.sorts.size(); ++s) sizes[x] += static_cast<int>(m.fibers[s][x].size());
    maxs = std::max(maxs, sizes[x]);
  }
  int n = maxs + k_extra;
  if (n > 8) throw Error("uniformize: universe too large for exhaustive verification (N > 8)");

  // Padded single-sorted family with per-fiber constant counts N - size.
  LogicActionFunctor f;
  f.universe = n;
  f.mode = mode;
  DiscreteStructureFamily& p = f.padded;
  p.base = m.base;
  p.sorts = {"u"};
  p.fibers.resize(1);
  p.fibers[0].resize(nb);
  std::vector<std::vector<int>> offset(m.sorts.size(), std::vector<int>(nb, 0));
  int max_k = 0;
  for (size_t x = 0; x < nb; ++x) {
    int pos = 0;
    for (size_t s = 0; s < m.sorts.size(); ++s) {
      offset[s][x] = pos;
      for (const auto& name : m.fibers[s][x]) {
        p.fibers[0][x].push_back(m.sorts[s] + ":" + name);
        ++pos;
      }
    }
    int kx = n - sizes[x];
    max_k = std::max(max_k, kx);
    for (int i = 0; i < kx; ++i) p.fibers[0][x].push_back("c" + std::to_string(i));
  }
  auto remap = [&](const std::vector<int>& arity, const std::vector<int>& t, size_t x) {
    std::vector<int> img(t.size());
    for (size_t i = 0; i < t.size(); ++i) img[i] = offset[static_cast<size_t>(arity[i])][x] + t[i];
    return img;
  };
  for (const auto& r : m.relations) {
    DiscreteStructureFamily::Relation nr;
    nr.name = r.name;
    nr.arity.assign(r.arity.size(), 0);
    nr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x) {
      for (const auto& t : r.tuples[x]) nr.tuples[x].push_back(remap(r.arity, t, x));
      std::sort(nr.tuples[x].begin(), nr.tuples[x].end());
    }
    p.relations.push_back(std::move(nr));
  }
  for (size_t s = 0; s < m.sorts.size(); ++s) {
    DiscreteStructureFamily::Relation pr;
    pr.name = "P:" + m.sorts[s];
    pr.arity = {0};
    pr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x)
      for (size_t e = 0; e < m.fibers[s][x].size(); ++e) pr.tuples[x].push_back({offset[s][x] + static_cast<int>(e)});
    p.relations.push_back(std::move(pr));
  }
  for (int i = 0; i < max_k; ++i) {
    DiscreteStructureFamily::Relation cr;
    cr.name = "C" + std::to_string(i);
    cr.arity = {0};
    cr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x)
      if (i < n - sizes[x]) cr.tuples[x].push_back({sizes[x] + i});
    p.relations.push_back(std::move(cr));
  }
  for (const auto& fn : m.functions) {
    DiscreteStructureFamily::Relation gr;
    gr.name = "graph:" + fn.name;
    gr.arity.assign(fn.arity.size() + 1, 0);
    gr.tuples.resize(nb);
    for (size_t x = 0; x < nb; ++x) {
      for (const auto& [args, val] : fn.graph[x]) {
        std::vector<int> t = remap(fn.arity, args, x);
        t.push_back(offset[static_cast<size_t>(fn.value_sort)][x] + val);
        gr.tuples[x].push_back(std::move(t));
      }
      std::sort(gr.tuples[x].begin(), gr.tuples[x].end());
    }
    p.relations.push_back(std::move(gr));
  }
  p.validate();

  // Choose the per-fiber bijection onto {0..N-1}.
  f.element_position.resize(nb);
  f.marker_positions.resize(nb);
  for (size_t x = 0; x < nb; ++x) {
    size_t total = p.fibers[0][x].size();
    if (static_cast<int>(total) != n) throw Error("uniformize: fiber not paddable to the common size");
    std::vector<int>& pos = f.element_position[x];
    pos.assign(total, -1);
    if (mode == UniformizeMode::plain) {
      std::iota(pos.begin(), pos.end(), 0);
    } else {
      long long capacity = 1;
      for (int i = 0; i < k_extra; ++i) capacity *= n - i;
      if (static_cast<long long>(nb) > capacity)
        throw Error("uniformize: injection capacity exceeded (N too small for the base in io mode)");
      std::vector<int> markers = nth_injection(n, k_extra, static_cast<long long>(x));
      f.marker_positions[x] = markers;
      std::vector<bool> taken(static_cast<size_t>(n), false);
      // The first k_extra constants carry the object code.
      for (int i = 0; i < k_extra; ++i) {
        pos[static_cast<size_t>(sizes[x] + i)] = markers[static_cast<size_t>(i)];
        taken[static_cast<size_t>(markers[static_cast<size_t>(i)])] = true;
      }
      int next = 0;
      for (size_t e = 0; e < total; ++e) {
        if (pos[e] >= 0) continue;
        while (taken[static_cast<size_t>(next)]) ++next;
        pos[e] = next;
        taken[static_cast<size_t>(next)] = true;
      }
    }
  }

  // Pushforward structures per object.
  for (size_t x = 0; x < nb; ++x) {
    Structure s;
    s.universe = n;
    for (const auto& r : p.relations) {
      s.rel_names.push_back(r.name);
      s.rel_arity.push_back(static_cast<int>(r.arity.size()));
      std::vector<std::vector<int>> tuples;
      for (const auto& t : r.tuples[x]) {
        std::vector<int> img(t.size());
        for (size_t i = 0; i < t.size(); ++i) img[i] = f.element_position[x][static_cast<size_t>(t[i])];
        tuples.push_back(std::move(img));
      }
      std::sort(tuples.begin(), tuples.end());
      s.rel_tuples.push_back(std::move(tuples));
    }
    f.objects.push_back(std::move(s));
  }
  return f;
}

std::vector<int> LogicActionFunctor::morphism_image(int x, int y, const FiberMap& padded_iso) const {
  const auto& px = element_position[static_cast<size_t>(x)];
  const auto& py = element_position[static_cast<size_t>(y)];
  std::vector<int> perm(static_cast<size_t>(universe), -1);
  for (size_t e = 0; e < px.size(); ++e)
    perm[static_cast<size_t>(px[e])] = py[static_cast<size_t>(padded_iso[0][e])];
  return perm;
}

UniformizeVerification verify_uniformize(const DiscreteStructureFamily& m, const LogicActionFunctor& f) {
  UniformizeVerification v;
  size_t nb = m.base.size();
  int n = f.universe;
  std::vector<int> identity(static_cast<size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<bool>> m_related(nb, std::vector<bool>(nb, false));
  std::vector<std::vector<bool>> f_related(nb, std::vector<bool>(nb, false));
  for (size_t x = 0; x < nb; ++x)
    for (size_t y = 0; y < nb; ++y) {
      auto isos = enumerate_isos(f.padded, static_cast<int>(x), static_cast<int>(y));
      auto orig = enumerate_isos(m, static_cast<int>(x), static_cast<int>(y));
      if (isos.size() != orig.size()) {
        v.full = v.faithful = false;
        v.witness = {static_cast<int>(x), static_cast<int>(y)};
        return v;
      }
      m_related[x][y] = !orig.empty();
      std::vector<std::vector<int>> images;
      for (const auto& iso : isos)
        images.push_back(f.morphism_image(static_cast<int>(x), static_cast<int>(y), iso));
      std::vector<std::vector<int>> hits;
      std::vector<int> perm = identity;
      do {
        if (pushforward(f.objects[x], perm) == f.objects[y]) hits.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      f_related[x][y] = !hits.empty();
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
        v.faithful = false;
        v.witness = {static_cast<int>(x), static_cast<int>(y)};
      }
      std::sort(hits.begin(), hits.end());
      if (images != hits) {
        v.full = false;
        v.witness = {static_cast<int>(x), static_cast<int>(y)};
      }
    }
  if (f.mode == UniformizeMode::injective_on_objects)
    for (size_t x = 0; x < nb; ++x)
      for (size_t y = x + 1; y < nb; ++y)
        if (f.objects[x] == f.objects[y]) {
          v.injective_on_objects = false;
          v.witness = {static_cast<int>(x), static_cast<int>(y)};
        }
  for (size_t x = 0; x < nb; ++x)
    for (size_t y = 0; y < nb; ++y)
      if (m_related[x][y] != f_related[x][y]) {
        v.orbit_reduction_injective = false;
        v.witness = {static_cast<int>(x), static_cast<int>(y)};
      }
  return v;
}

int decode_object(const LogicActionFunctor& f, const Structure& s) {
  for (size_t x = 0; x < f.objects.size(); ++x) {
    const auto& markers = f.marker_positions[x];
    bool match = !markers.empty();
    for (size_t i = 0; i < markers.size() && match; ++i) {
      // C_i is the relation named "Ci"; its singleton tuple carries the slot.
      std::string name = "C" + std::to_string(i);
      auto it = std::find(s.rel_names.begin(), s.rel_names.end(), name);
      match = it != s.rel_names.end();
      if (match) {
        const auto& tuples = s.rel_tuples[static_cast<size_t>(it - s.rel_names.begin())];
        match = tuples.size() >= 1 && tuples[0].size() == 1 && tuples[0][0] == markers[i];
      }
    }
    if (match) return static_cast<int>(x);
  }
  return -1;
}

bool is_functor(const FinGroupoid& g, const FinGroupoid& h, const FinFunctor& f, std::string* reason,
                std::vector<int>* witness) {
  auto fail = [&](const std::string& r, std::vector<int> w) {
    if (reason) *reason = r;
    if (witness) *witness = std::move(w);
    return false;
  };
  if (f.obj_map.size() != g.object_count() || f.mor_map.size() != g.size()) return fail("tables", {});
  for (size_t m = 0; m < g.size(); ++m) {
    int fm = f.mor_map[m];
    if (fm < 0 || static_cast<size_t>(fm) >= h.size()) return fail("range", {static_cast<int>(m)});
    if (h.src[static_cast<size_t>(fm)] != f.obj_map[static_cast<size_t>(g.src[m])] ||
        h.tgt[static_cast<size_t>(fm)] != f.obj_map[static_cast<size_t>(g.tgt[m])])
      return fail("endpoints", {static_cast<int>(m)});
  }
  for (size_t x = 0; x < g.object_count(); ++x)
    if (f.mor_map[static_cast<size_t>(g.unit[x])] !=
        h.unit[static_cast<size_t>(f.obj_map[x])])
      return fail("units", {static_cast<int>(x)});
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t b = 0; b < g.size(); ++b) {
      if (!g.composable(static_cast<int>(a), static_cast<int>(b))) continue;
      if (f.mor_map[static_cast<size_t>(g.mul(static_cast<int>(a), static_cast<int>(b)))] !=
          h.mul(f.mor_map[a], f.mor_map[b]))
        return fail("composition", {static_cast<int>(a), static_cast<int>(b)});
    }
  return true;
}

FunctorAnalysis functor_analysis(const FinGroupoid& g, const FinGroupoid& h, const FinFunctor& f) {
  FunctorAnalysis out;
  if (!is_functor(g, h, f, &out.invalid_reason, &out.witness)) return out;
  out.valid = true;
  out.full = out.faithful = true;
  for (size_t x = 0; x < g.object_count(); ++x)
    for (size_t y = 0; y < g.object_count(); ++y) {
      auto gh = g.hom(static_cast<int>(x), static_cast<int>(y));
      auto hh = h.hom(f.obj_map[x], f.obj_map[y]);
      std::vector<int> images;
      for (int m : gh) images.push_back(f.mor_map[static_cast<size_t>(m)]);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) out.faithful = false;
      for (int m : hh)
        if (!std::binary_search(images.begin(), images.end(), m)) out.full = false;
    }
  // Essential surjectivity: the essential image saturates H^0.
  std::vector<bool> hit(h.object_count(), false);
  for (size_t x = 0; x < g.object_count(); ++x) hit[static_cast<size_t>(f.obj_map[x])] = true;
  auto horb = orbits(h);
  std::vector<bool> orbit_hit(h.object_count(), false);
  for (size_t y = 0; y < h.object_count(); ++y)
    if (hit[y]) orbit_hit[static_cast<size_t>(horb[y])] = true;
  out.essentially_surjective = true;
  for (size_t y = 0; y < h.object_count(); ++y)
    if (!orbit_hit[static_cast<size_t>(horb[y])]) out.essentially_surjective = false;
  if (!(out.full && out.faithful && out.essentially_surjective)) return out;

  // Inverse equivalence: choose x_y and h_y : F(x_y) -> y (least indices first).
  size_t nh = h.object_count();
  std::vector<int> xy(nh, -1), hy(nh, -1);
  for (size_t y = 0; y < nh; ++y) {
    for (size_t x = 0; x < g.object_count() && xy[y] < 0; ++x)
      for (int m : h.hom(f.obj_map[x], static_cast<int>(y))) {
        xy[y] = static_cast<int>(x);
        hy[y] = m;
        break;
      }
    if (xy[y] < 0) throw Error("functor_analysis: essential surjectivity witness missing");
  }
  FinFunctor inv;
  inv.obj_map.assign(nh, -1);
  for (size_t y = 0; y < nh; ++y) inv.obj_map[y] = xy[y];
  inv.mor_map.assign(h.size(), -1);
  for (size_t m = 0; m < h.size(); ++m) {
    int y = h.src[m], y2 = h.tgt[m];
    int conj = h.mul(h.mul(h.inv(hy[static_cast<size_t>(y2)]), static_cast<int>(m)), hy[static_cast<size_t>(y)]);
    int found = -1;
    for (int c : g.hom(xy[static_cast<size_t>(y)], xy[static_cast<size_t>(y2)]))
      if (f.mor_map[static_cast<size_t>(c)] == conj) {
        found = c;
        break;
      }
    if (found < 0) throw Error("functor_analysis: fullness witness missing");
    inv.mor_map[m] = found;
  }
  std::string why;
  if (!is_functor(h, g, inv, &why, nullptr)) throw Error("functor_analysis: inverse is not a functor: " + why);
  out.inverse = inv;
  // Natural isomorphisms: F o F' ~ 1_H via h_y, and F' o F ~ 1_G.
  out.unit_components.assign(nh, -1);
  for (size_t y = 0; y < nh; ++y) out.unit_components[y] = hy[y];
  out.counit_components.assign(g.object_count(), -1);
  for (size_t x = 0; x < g.object_count(); ++x) {
    int fx = f.obj_map[x];
    int conj = hy[static_cast<size_t>(fx)];  // F(x_{F(x)}) -> F(x)
    int found = -1;
    for (int c : g.hom(xy[static_cast<size_t>(fx)], static_cast<int>(x)))
      if (f.mor_map[static_cast<size_t>(c)] == conj) {
        found = c;
        break;
      }
    if (found < 0) throw Error("functor_analysis: counit component missing");
    out.counit_components[x] = found;
  }
  out.natural_squares_ok = true;
  for (size_t m = 0; m < h.size(); ++m) {
    int y = h.src[m], y2 = h.tgt[m];
    // alpha(y') * F(F'(h)) = h * alpha(y)
    int lhs = h.mul(out.unit_components[static_cast<size_t>(y2)],
                    f.mor_map[static_cast<size_t>(inv.mor_map[m])]);
    int rhs = h.mul(static_cast<int>(m), out.unit_components[static_cast<size_t>(y)]);
    if (lhs != rhs) out.natural_squares_ok = false;
  }
  for (size_t m = 0; m < g.size(); ++m) {
    int x = g.src[m], x2 = g.tgt[m];
    // beta(x') * F'(F(g)) = g * beta(x)
    int lhs = g.mul(out.counit_components[static_cast<size_t>(x2)],
                    inv.mor_map[static_cast<size_t>(f.mor_map[m])]);
    int rhs = g.mul(static_cast<int>(m), out.counit_components[static_cast<size_t>(x)]);
    if (lhs != rhs) out.natural_squares_ok = false;
  }
  return out;
}

}  // namespace topogrey
