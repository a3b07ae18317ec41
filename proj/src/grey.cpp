#include "topogrey/grey.hpp"

#include <algorithm>

namespace topogrey {

int carrier_index(const Carrier& c, const std::string& point) {
  auto it = std::find(c.begin(), c.end(), point);
  if (it == c.end()) throw Error("carrier: unknown point '" + point + "'");
  return static_cast<int>(it - c.begin());
}

static void check_carrier(const Carrier& c) {
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == c[j]) throw Error("carrier: duplicate point '" + c[i] + "'");
}

GreySet::GreySet(Carrier c, std::vector<Rational01> v) : carrier(std::move(c)), values(std::move(v)) {
  check_carrier(carrier);
  if (carrier.size() != values.size()) throw Error("grey set: value table does not match carrier");
}

GreySet GreySet::constant(Carrier c, Rational01 r) {
  size_t n = c.size();
  return GreySet(std::move(c), std::vector<Rational01>(n, r));
}

GreySet GreySet::zero_indicator(Carrier c, const std::vector<std::string>& members) {
  GreySet a = constant(std::move(c), Rational01::one());
  for (const auto& p : members) a.values[static_cast<size_t>(carrier_index(a.carrier, p))] = Rational01::zero();
  return a;
}

const Rational01& GreySet::of(const std::string& point) const {
  return values[static_cast<size_t>(carrier_index(carrier, point))];
}

bool GreySet::is_crisp() const {
  return std::all_of(values.begin(), values.end(), [](const Rational01& r) { return r.is_crisp(); });
}

GreyRelation::GreyRelation(Carrier src, Carrier tgt, std::vector<Rational01> v)
    : source(std::move(src)), target(std::move(tgt)), values(std::move(v)) {
  check_carrier(source);
  check_carrier(target);
  if (values.size() != source.size() * target.size())
    throw Error("grey relation: value table does not match carrier pair");
}

GreyRelation GreyRelation::constant(Carrier src, Carrier tgt, Rational01 r) {
  size_t n = src.size() * tgt.size();
  return GreyRelation(std::move(src), std::move(tgt), std::vector<Rational01>(n, r));
}

GreyRelation GreyRelation::diagonal(Carrier c) {
  GreyRelation d = constant(c, c, Rational01::one());
  for (size_t i = 0; i < c.size(); ++i) d.at(static_cast<int>(i), static_cast<int>(i)) = Rational01::zero();
  return d;
}

static void check_shared(const GreySet& a, const GreySet& b) {
  if (a.carrier != b.carrier) throw Error("grey set: carrier mismatch");
}

template <typename F>
static GreySet pointwise(const GreySet& a, const GreySet& b, F f) {
  check_shared(a, b);
  std::vector<Rational01> v(a.values.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = f(a.values[i], b.values[i]);
  return GreySet(a.carrier, std::move(v));
}

GreySet grey_union(const GreySet& a, const GreySet& b) { return pointwise(a, b, rat_min); }
GreySet grey_intersection(const GreySet& a, const GreySet& b) { return pointwise(a, b, rat_max); }
GreySet grey_add(const GreySet& a, const GreySet& b) {
  return pointwise(a, b, [](const Rational01& x, const Rational01& y) { return x.trunc_add(y); });
}

GreySet shift_add(const GreySet& a, const Rational01& r) {
  GreySet out = a;
  for (auto& v : out.values) v = v.trunc_add(r);
  return out;
}

GreySet shift_sub(const GreySet& a, const Rational01& r) {
  GreySet out = a;
  for (auto& v : out.values) v = v.trunc_sub(r);
  return out;
}

std::vector<std::string> sublevel(const GreySet& a, const Rational01& r, bool strict) {
  std::vector<std::string> out;
  for (size_t i = 0; i < a.size(); ++i)
    if (strict ? a.values[i] < r : a.values[i] <= r) out.push_back(a.carrier[i]);
  return out;
}

PointMap::PointMap(Carrier src, Carrier tgt, std::vector<int> m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
  if (map.size() != source.size()) throw Error("point map: not total on source");
  for (int j : map)
    if (j < 0 || static_cast<size_t>(j) >= target.size()) throw Error("point map: image out of range");
}

PointMap PointMap::identity(Carrier c) {
  std::vector<int> m(c.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>(i);
  return PointMap(c, c, std::move(m));
}

GreySet map_image(const PointMap& f, const GreySet& a) {
  if (a.carrier != f.source) throw Error("map_image: grey set not on the map's source");
  GreySet out = GreySet::constant(f.target, Rational01::one());  // empty fiber -> 1
  for (size_t i = 0; i < a.size(); ++i) {
    auto& slot = out.values[static_cast<size_t>(f.map[i])];
    slot = rat_min(slot, a.values[i]);
  }
  return out;
}

GreySet map_preimage(const PointMap& f, const GreySet& b) {
  if (b.carrier != f.target) throw Error("map_preimage: grey set not on the map's target");
  std::vector<Rational01> v(f.source.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = b.values[static_cast<size_t>(f.map[i])];
  return GreySet(f.source, std::move(v));
}

GreySet rel_image(const GreyRelation& r, const GreySet& a) {
  if (a.carrier != r.source) throw Error("rel_image: grey set not on the relation's source");
  GreySet out = GreySet::constant(r.target, Rational01::one());
  for (size_t y = 0; y < r.target.size(); ++y) {
    Rational01 m = Rational01::one();
    for (size_t x = 0; x < r.source.size(); ++x)
      m = rat_min(m, r.at(static_cast<int>(x), static_cast<int>(y)).trunc_add(a.values[x]));
    out.values[y] = m;
  }
  return out;
}

GreyRelation rel_compose(const GreyRelation& s, const GreyRelation& r) {
  if (r.target != s.source) throw Error("rel_compose: middle carrier mismatch");
  GreyRelation out = GreyRelation::constant(r.source, s.target, Rational01::one());
  for (size_t x = 0; x < r.source.size(); ++x)
    for (size_t z = 0; z < s.target.size(); ++z) {
      Rational01 m = Rational01::one();
      for (size_t y = 0; y < r.target.size(); ++y)
        m = rat_min(m, r.at(static_cast<int>(x), static_cast<int>(y))
                           .trunc_add(s.at(static_cast<int>(y), static_cast<int>(z))));
      out.at(static_cast<int>(x), static_cast<int>(z)) = m;
    }
  return out;
}

GreyRelation rel_inverse(const GreyRelation& r) {
  GreyRelation out = GreyRelation::constant(r.target, r.source, Rational01::zero());
  for (size_t i = 0; i < r.source.size(); ++i)
    for (size_t j = 0; j < r.target.size(); ++j)
      out.at(static_cast<int>(j), static_cast<int>(i)) = r.at(static_cast<int>(i), static_cast<int>(j));
  return out;
}

std::string product_point_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

GreyRelation product_sum_relation(const GreyRelation& dx, const GreyRelation& dy) {
  if (!dx.is_square() || !dy.is_square()) throw Error("product_sum_relation: operands must be square");
  Carrier prod;
  for (const auto& a : dx.source)
    for (const auto& b : dy.source) prod.push_back(product_point_name(a, b));
  size_t nx = dx.source.size(), ny = dy.source.size();
  GreyRelation out = GreyRelation::constant(prod, prod, Rational01::zero());
  for (size_t i = 0; i < nx; ++i)
    for (size_t j = 0; j < ny; ++j)
      for (size_t k = 0; k < nx; ++k)
        for (size_t l = 0; l < ny; ++l)
          out.at(static_cast<int>(i * ny + j), static_cast<int>(k * ny + l)) =
              dx.at(static_cast<int>(i), static_cast<int>(k))
                  .trunc_add(dy.at(static_cast<int>(j), static_cast<int>(l)));
  return out;
}

PseudometricVerdict pseudometric_check(const GreyRelation& d) {
  PseudometricVerdict v;
  if (!d.is_square()) throw Error("pseudometric_check: relation not square");
  size_t n = d.source.size();
  for (size_t i = 0; i < n; ++i)
    if (!d.at(static_cast<int>(i), static_cast<int>(i)).is_zero()) {
      v.failed_axiom = "reflexive";
      v.witness = {d.source[i]};
      return v;
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (d.at(static_cast<int>(i), static_cast<int>(j)) != d.at(static_cast<int>(j), static_cast<int>(i))) {
        v.failed_axiom = "symmetric";
        v.witness = {d.source[i], d.source[j]};
        return v;
      }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (d.at(static_cast<int>(i), static_cast<int>(j))
                .trunc_add(d.at(static_cast<int>(j), static_cast<int>(k))) <
            d.at(static_cast<int>(i), static_cast<int>(k))) {
          v.failed_axiom = "triangle";
          v.witness = {d.source[i], d.source[j], d.source[k]};
          return v;
        }
  v.ok = true;
  return v;
}

Pseudometric::Pseudometric(GreyRelation rel_) : rel(std::move(rel_)) {
  PseudometricVerdict v = pseudometric_check(rel);
  if (!v.ok) {
    std::string w;
    for (const auto& p : v.witness) w += " " + p;
    throw Error("pseudometric: axiom '" + v.failed_axiom + "' fails at" + w);
  }
}

GreySet saturate(const Pseudometric& d, const GreySet& a) {
  if (a.carrier != d.carrier()) throw Error("saturate: carrier mismatch");
  return rel_image(d.rel, a);
}

}  // namespace topogrey
