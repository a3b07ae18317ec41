#include "topogrey/io.hpp"

#include <algorithm>
#include <fstream>

namespace topogrey {

json rat_to_json(const Rational01& r) { return r.str(); }

Rational01 rat_from_json(const json& j) {
  if (!j.is_string()) throw Error("json: rational must be a \"num/den\" string");
  return Rational01::parse(j.get<std::string>());
}

json grey_set_to_json(const GreySet& a) {
  json j;
  j["carrier"] = a.carrier;
  json vals = json::object();
  for (size_t i = 0; i < a.size(); ++i) vals[a.carrier[i]] = rat_to_json(a.values[i]);
  j["values"] = vals;
  return j;
}

GreySet grey_set_from_json(const json& j) {
  Carrier c = j.at("carrier").get<Carrier>();
  std::vector<Rational01> v;
  for (const auto& p : c) v.push_back(rat_from_json(j.at("values").at(p)));
  return GreySet(std::move(c), std::move(v));
}

json grey_relation_to_json(const GreyRelation& r) {
  json j;
  j["source"] = r.source;
  j["target"] = r.target;
  json vals = json::object();
  for (size_t i = 0; i < r.source.size(); ++i) {
    json row = json::object();
    for (size_t k = 0; k < r.target.size(); ++k)
      row[r.target[k]] = rat_to_json(r.at(static_cast<int>(i), static_cast<int>(k)));
    vals[r.source[i]] = row;
  }
  j["values"] = vals;
  return j;
}

GreyRelation grey_relation_from_json(const json& j) {
  Carrier src = j.at("source").get<Carrier>();
  Carrier tgt = j.at("target").get<Carrier>();
  std::vector<Rational01> v;
  for (const auto& s : src)
    for (const auto& t : tgt) v.push_back(rat_from_json(j.at("values").at(s).at(t)));
  return GreyRelation(std::move(src), std::move(tgt), std::move(v));
}

json metric_to_json(const FinMetricSpace& x) {
  json j;
  j["points"] = x.points;
  json rows = json::array();
  for (size_t i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (size_t k = 0; k < x.size(); ++k) row.push_back(rat_to_json(x.d(static_cast<int>(i), static_cast<int>(k))));
    rows.push_back(row);
  }
  j["dist"] = rows;
  return j;
}

FinMetricSpace metric_from_json(const json& j) {
  std::vector<std::string> pts = j.at("points").get<std::vector<std::string>>();
  const json& rows = j.at("dist");
  if (rows.size() != pts.size()) throw Error("json: dist row count does not match points");
  std::vector<Rational01> table;
  for (const auto& row : rows) {
    if (row.size() != pts.size()) throw Error("json: dist row length does not match points");
    for (const auto& cell : row) table.push_back(rat_from_json(cell));
  }
  FinMetricSpace x(std::move(pts), std::move(table));
  MetricVerdict v = validate_metric(x);
  if (!v.ok) throw Error("json: metric table fails axiom '" + v.failed_axiom + "'");
  return x;
}

json groupoid_to_json(const FinGroupoid& g) {
  json j;
  j["objects"] = g.objects;
  json ms = json::array();
  for (size_t m = 0; m < g.size(); ++m) {
    json mj;
    mj["id"] = g.morphisms[m];
    mj["src"] = g.objects[static_cast<size_t>(g.src[m])];
    mj["tgt"] = g.objects[static_cast<size_t>(g.tgt[m])];
    ms.push_back(mj);
  }
  j["morphisms"] = ms;
  json comp = json::array();
  for (size_t a = 0; a < g.size(); ++a) {
    json row = json::array();
    for (size_t b = 0; b < g.size(); ++b) {
      int c = g.compose[a][b];
      if (c < 0)
        row.push_back(nullptr);
      else
        row.push_back(g.morphisms[static_cast<size_t>(c)]);
    }
    comp.push_back(row);
  }
  j["compose"] = comp;
  json inv = json::array();
  for (size_t m = 0; m < g.size(); ++m) inv.push_back(g.morphisms[static_cast<size_t>(g.inv(static_cast<int>(m)))]);
  j["inverse"] = inv;
  return j;
}

FinGroupoid groupoid_from_json(const json& j) {
  FinGroupoid g;
  g.objects = j.at("objects").get<std::vector<std::string>>();
  auto obj_index = [&](const std::string& o) {
    for (size_t i = 0; i < g.objects.size(); ++i)
      if (g.objects[i] == o) return static_cast<int>(i);
    throw Error("json: unknown object '" + o + "'");
  };
  for (const auto& mj : j.at("morphisms")) {
    g.morphisms.push_back(mj.at("id").get<std::string>());
    g.src.push_back(obj_index(mj.at("src").get<std::string>()));
    g.tgt.push_back(obj_index(mj.at("tgt").get<std::string>()));
  }
  auto mor_index = [&](const std::string& m) {
    for (size_t i = 0; i < g.morphisms.size(); ++i)
      if (g.morphisms[i] == m) return static_cast<int>(i);
    throw Error("json: unknown morphism '" + m + "'");
  };
  const json& comp = j.at("compose");
  if (comp.size() != g.size()) throw Error("json: compose table does not match morphisms");
  for (size_t a = 0; a < g.size(); ++a) {
    const json& row = comp[a];
    if (row.size() != g.size()) throw Error("json: compose row length mismatch");
    std::vector<int> r;
    for (const auto& cell : row) r.push_back(cell.is_null() ? -1 : mor_index(cell.get<std::string>()));
    g.compose.push_back(std::move(r));
  }
  for (const auto& cell : j.at("inverse")) g.inverse.push_back(mor_index(cell.get<std::string>()));
  // Units: the idempotent endomorphism of each object.
  g.unit.assign(g.object_count(), -1);
  for (size_t m = 0; m < g.size(); ++m)
    if (g.src[m] == g.tgt[m] && g.compose[m][m] == static_cast<int>(m)) {
      if (g.unit[static_cast<size_t>(g.src[m])] >= 0) throw Error("json: object has two idempotent endomorphisms");
      g.unit[static_cast<size_t>(g.src[m])] = static_cast<int>(m);
    }
  for (size_t x = 0; x < g.object_count(); ++x)
    if (g.unit[x] < 0) throw Error("json: object '" + g.objects[x] + "' has no unit morphism");
  GroupoidVerdict v = validate_groupoid(g);
  if (!v.ok) throw Error("json: groupoid fails axiom '" + v.failed_axiom + "'");
  return g;
}

json norm_to_json(const FinGroupoid& g, const GreyMorphismSet& values, const std::string& groupoid_ref) {
  json j;
  if (!groupoid_ref.empty()) j["groupoid"] = groupoid_ref;
  json vals = json::object();
  for (size_t m = 0; m < g.size(); ++m) vals[g.morphisms[m]] = rat_to_json(values[m]);
  j["values"] = vals;
  return j;
}

GreyMorphismSet norm_values_from_json(const FinGroupoid& g, const json& j) {
  GreyMorphismSet out(g.size(), Rational01::one());
  for (size_t m = 0; m < g.size(); ++m) out[m] = rat_from_json(j.at("values").at(g.morphisms[m]));
  return out;
}

json tower_to_json(const UrysohnTower& t) {
  json j;
  j["q"] = t.q;
  j["depth"] = t.depth;
  j["budget"] = t.budget;
  j["complete"] = t.complete;
  j["level_sizes"] = t.level_sizes;
  json levels = json::array();
  for (int n = 0; n <= t.depth_built(); ++n) levels.push_back(metric_to_json(t.level(n)));
  j["levels"] = levels;
  json inclusions = json::array();
  for (int n = 0; n < t.depth_built(); ++n) {
    std::vector<size_t> idx(t.level_sizes[static_cast<size_t>(n)]);
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    inclusions.push_back(idx);
  }
  j["inclusions"] = inclusions;
  json prov = json::array();
  for (const auto& p : t.provenance) {
    if (!p) {
      prov.push_back(nullptr);
      continue;
    }
    json pj;
    pj["level"] = p->level;
    pj["support"] = p->support;
    json vals = json::array();
    for (const auto& r : p->values) vals.push_back(rat_to_json(r));
    pj["values"] = vals;
    prov.push_back(pj);
  }
  j["provenance"] = prov;
  return j;
}

UrysohnTower tower_from_json(const json& j) {
  UrysohnTower t;
  t.q = j.at("q").get<std::int64_t>();
  t.depth = j.at("depth").get<int>();
  t.budget = j.at("budget").get<size_t>();
  t.complete = j.at("complete").get<bool>();
  t.level_sizes = j.at("level_sizes").get<std::vector<size_t>>();
  const json& levels = j.at("levels");
  if (levels.empty()) throw Error("json: tower has no levels");
  t.space = metric_from_json(levels.back());
  for (const auto& pj : j.at("provenance")) {
    if (pj.is_null()) {
      t.provenance.push_back(std::nullopt);
      continue;
    }
    TowerPointLog log;
    log.level = pj.at("level").get<int>();
    log.support = pj.at("support").get<std::vector<int>>();
    for (const auto& v : pj.at("values")) log.values.push_back(rat_from_json(v));
    t.provenance.emplace_back(std::move(log));
  }
  return t;
}

json family_to_json(const DiscreteStructureFamily& m) {
  json j;
  j["base"] = m.base;
  j["sorts"] = m.sorts;
  json fibers = json::object();
  for (size_t x = 0; x < m.base.size(); ++x) {
    json per_sort = json::object();
    for (size_t s = 0; s < m.sorts.size(); ++s) per_sort[m.sorts[s]] = m.fibers[s][x];
    fibers[m.base[x]] = per_sort;
  }
  j["fibers"] = fibers;
  json rels = json::array();
  for (const auto& r : m.relations) {
    json rj;
    rj["name"] = r.name;
    json ar = json::array();
    for (int s : r.arity) ar.push_back(m.sorts[static_cast<size_t>(s)]);
    rj["arity"] = ar;
    json tuples = json::object();
    for (size_t x = 0; x < m.base.size(); ++x) tuples[m.base[x]] = r.tuples[x];
    rj["tuples"] = tuples;
    rels.push_back(rj);
  }
  j["relations"] = rels;
  json fns = json::array();
  for (const auto& f : m.functions) {
    json fj;
    fj["name"] = f.name;
    json ar = json::array();
    for (int s : f.arity) ar.push_back(m.sorts[static_cast<size_t>(s)]);
    fj["arity"] = ar;
    fj["value_sort"] = m.sorts[static_cast<size_t>(f.value_sort)];
    json graph = json::object();
    for (size_t x = 0; x < m.base.size(); ++x) {
      json entries = json::array();
      for (const auto& [args, val] : f.graph[x]) {
        json e = args;
        e.push_back(val);
        entries.push_back(e);
      }
      graph[m.base[x]] = entries;
    }
    fj["graph"] = graph;
    fns.push_back(fj);
  }
  j["functions"] = fns;
  return j;
}

DiscreteStructureFamily family_from_json(const json& j) {
  DiscreteStructureFamily m;
  m.base = j.at("base").get<std::vector<std::string>>();
  m.sorts = j.at("sorts").get<std::vector<std::string>>();
  auto sort_index = [&](const std::string& s) {
    for (size_t i = 0; i < m.sorts.size(); ++i)
      if (m.sorts[i] == s) return static_cast<int>(i);
    throw Error("json: unknown sort '" + s + "'");
  };
  m.fibers.assign(m.sorts.size(), std::vector<std::vector<std::string>>(m.base.size()));
  for (size_t x = 0; x < m.base.size(); ++x)
    for (size_t s = 0; s < m.sorts.size(); ++s)
      m.fibers[s][x] = j.at("fibers").at(m.base[x]).at(m.sorts[s]).get<std::vector<std::string>>();
  for (const auto& rj : j.value("relations", json::array())) {
    DiscreteStructureFamily::Relation r;
    r.name = rj.at("name").get<std::string>();
    for (const auto& s : rj.at("arity")) r.arity.push_back(sort_index(s.get<std::string>()));
    r.tuples.resize(m.base.size());
    for (size_t x = 0; x < m.base.size(); ++x) {
      r.tuples[x] = rj.at("tuples").at(m.base[x]).get<std::vector<std::vector<int>>>();
      std::sort(r.tuples[x].begin(), r.tuples[x].end());
    }
    m.relations.push_back(std::move(r));
  }
  for (const auto& fj : j.value("functions", json::array())) {
    DiscreteStructureFamily::Function f;
    f.name = fj.at("name").get<std::string>();
    for (const auto& s : fj.at("arity")) f.arity.push_back(sort_index(s.get<std::string>()));
    f.value_sort = sort_index(fj.at("value_sort").get<std::string>());
    f.graph.resize(m.base.size());
    for (size_t x = 0; x < m.base.size(); ++x)
      for (const auto& e : fj.at("graph").at(m.base[x])) {
        std::vector<int> row = e.get<std::vector<int>>();
        if (row.empty()) throw Error("json: empty function graph entry");
        int val = row.back();
        row.pop_back();
        f.graph[x][row] = val;
      }
    m.functions.push_back(std::move(f));
  }
  m.validate();
  return m;
}

json subgroupoid_to_json(const FinGroupoid& g, const Subgroupoid& u) {
  json ids = json::array();
  for (int m : u.morphisms) ids.push_back(g.morphisms[static_cast<size_t>(m)]);
  return ids;
}

Subgroupoid subgroupoid_from_json(const FinGroupoid& g, const json& j) {
  Subgroupoid u;
  for (const auto& id : j) u.morphisms.push_back(g.morphism_index(id.get<std::string>()));
  std::sort(u.morphisms.begin(), u.morphisms.end());
  if (!is_subgroupoid(g, u.morphisms)) throw Error("json: morphism set is not a subgroupoid");
  return u;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("parse error in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace topogrey
