#include "topogrey/metric.hpp"

#include <algorithm>

namespace topogrey {

FinMetricSpace::FinMetricSpace(std::vector<std::string> pts, std::vector<Rational01> table)
    : points(std::move(pts)), dist(std::move(table)) {
  if (dist.size() != points.size() * points.size())
    throw Error("metric space: table size does not match point count");
}

FinMetricSpace FinMetricSpace::singleton(std::string name) {
  FinMetricSpace x;
  x.points.push_back(std::move(name));
  x.dist.assign(1, Rational01::zero());
  return x;
}

FinMetricSpace FinMetricSpace::from_pairs(std::vector<std::string> pts,
                                          const std::vector<std::tuple<int, int, Rational01>>& entries) {
  size_t n = pts.size();
  FinMetricSpace x(std::move(pts), std::vector<Rational01>(n * n, Rational01::zero()));
  std::vector<bool> seen(n * n, false);
  for (auto& [i, j, r] : entries) {
    x.dist[static_cast<size_t>(i) * n + static_cast<size_t>(j)] = r;
    x.dist[static_cast<size_t>(j) * n + static_cast<size_t>(i)] = r;
    seen[static_cast<size_t>(i) * n + static_cast<size_t>(j)] = true;
    seen[static_cast<size_t>(j) * n + static_cast<size_t>(i)] = true;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && !seen[i * n + j]) throw Error("metric space: missing distance entry");
  return x;
}

MetricVerdict validate_metric(const FinMetricSpace& x) {
  MetricVerdict v;
  int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i)
    if (!x.d(i, i).is_zero()) {
      v.failed_axiom = "diagonal";
      v.witness = {i};
      return v;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x.d(i, j) != x.d(j, i)) {
        v.failed_axiom = "symmetric";
        v.witness = {i, j};
        return v;
      }
      if (i != j && x.d(i, j).is_zero()) {
        v.failed_axiom = "strict";
        v.witness = {i, j};
        return v;
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (x.d(i, j).trunc_add(x.d(j, k)) < x.d(i, k)) {
          v.failed_axiom = "triangle";
          v.witness = {i, j, k};
          return v;
        }
  v.ok = true;
  return v;
}

FinMetricSpace sum_product(const FinMetricSpace& x, const FinMetricSpace& y) {
  size_t nx = x.size(), ny = y.size();
  std::vector<std::string> pts;
  pts.reserve(nx * ny);
  for (const auto& a : x.points)
    for (const auto& b : y.points) pts.push_back(product_point_name(a, b));
  std::vector<Rational01> table(nx * ny * nx * ny);
  for (size_t i = 0; i < nx; ++i)
    for (size_t j = 0; j < ny; ++j)
      for (size_t k = 0; k < nx; ++k)
        for (size_t l = 0; l < ny; ++l)
          table[(i * ny + j) * nx * ny + (k * ny + l)] =
              x.d(static_cast<int>(i), static_cast<int>(k))
                  .trunc_add(y.d(static_cast<int>(j), static_cast<int>(l)));
  FinMetricSpace out(std::move(pts), std::move(table));
  MetricVerdict v = validate_metric(out);
  if (!v.ok) throw Error("sum_product: result fails metric axiom " + v.failed_axiom);
  return out;
}

FinMetricSpace subspace(const FinMetricSpace& z, const std::vector<int>& idxs) {
  std::vector<std::string> pts;
  pts.reserve(idxs.size());
  for (int i : idxs) pts.push_back(z.points[static_cast<size_t>(i)]);
  std::vector<Rational01> table(idxs.size() * idxs.size());
  for (size_t a = 0; a < idxs.size(); ++a)
    for (size_t b = 0; b < idxs.size(); ++b) table[a * idxs.size() + b] = z.d(idxs[a], idxs[b]);
  return FinMetricSpace(std::move(pts), std::move(table));
}

Rational01 hausdorff_distance(const FinMetricSpace& z, const std::vector<int>& a,
                              const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw Error("hausdorff_distance: empty subset");
  auto directed = [&](const std::vector<int>& from, const std::vector<int>& to) {
    Rational01 sup = Rational01::zero();
    for (int p : from) {
      Rational01 inf = Rational01::one();
      for (int q : to) inf = rat_min(inf, z.d(p, q));
      sup = rat_max(sup, inf);
    }
    return sup;
  };
  return rat_max(directed(a, b), directed(b, a));
}

namespace {

struct IsoSearch {
  const FinMetricSpace& x;
  const FinMetricSpace& y;
  std::vector<int> xy, yx;  // partial maps, -1 unset

  bool consistent(int i, int j) const {
    for (size_t k = 0; k < xy.size(); ++k)
      if (xy[k] >= 0 && x.d(static_cast<int>(k), i) != y.d(xy[k], j)) return false;
    return true;
  }

  bool extend() {
    int i = -1, j = -1;
    size_t matched = 0;
    for (int v : xy)
      if (v >= 0) ++matched;
    if (matched == xy.size()) return true;
    // Back-and-forth: alternate which side supplies the next unmatched point.
    bool from_x = matched % 2 == 0;
    if (from_x) {
      for (size_t k = 0; k < xy.size(); ++k)
        if (xy[k] < 0) {
          i = static_cast<int>(k);
          break;
        }
      if (i < 0) from_x = false;
    }
    if (!from_x) {
      for (size_t k = 0; k < yx.size(); ++k)
        if (yx[k] < 0) {
          j = static_cast<int>(k);
          break;
        }
    }
    if (from_x) {
      for (size_t c = 0; c < yx.size(); ++c) {
        if (yx[c] >= 0 || !consistent(i, static_cast<int>(c))) continue;
        xy[static_cast<size_t>(i)] = static_cast<int>(c);
        yx[c] = i;
        if (extend()) return true;
        xy[static_cast<size_t>(i)] = -1;
        yx[c] = -1;
      }
    } else {
      for (size_t c = 0; c < xy.size(); ++c) {
        if (xy[c] >= 0 || !consistent(static_cast<int>(c), j)) continue;
        xy[c] = j;
        yx[static_cast<size_t>(j)] = static_cast<int>(c);
        if (extend()) return true;
        xy[c] = -1;
        yx[static_cast<size_t>(j)] = -1;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<PartialIsometry> find_isometry(const FinMetricSpace& x, const FinMetricSpace& y,
                                             const PartialIsometry& seed) {
  if (x.size() != y.size()) return std::nullopt;
  IsoSearch s{x, y, std::vector<int>(x.size(), -1), std::vector<int>(y.size(), -1)};
  for (auto [i, j] : seed.pairs) {
    if (i < 0 || j < 0 || static_cast<size_t>(i) >= x.size() || static_cast<size_t>(j) >= y.size())
      throw Error("find_isometry: seed index out of range");
    if ((s.xy[static_cast<size_t>(i)] >= 0 && s.xy[static_cast<size_t>(i)] != j) ||
        (s.yx[static_cast<size_t>(j)] >= 0 && s.yx[static_cast<size_t>(j)] != i))
      throw Error("find_isometry: seed is not injective");
    for (auto [i2, j2] : seed.pairs)
      if (x.d(i, i2) != y.d(j, j2)) throw Error("find_isometry: seed is not a partial isometry");
    s.xy[static_cast<size_t>(i)] = j;
    s.yx[static_cast<size_t>(j)] = i;
  }
  if (!s.extend()) return std::nullopt;
  PartialIsometry out;
  for (size_t i = 0; i < s.xy.size(); ++i) out.pairs.emplace_back(static_cast<int>(i), s.xy[i]);
  return out;
}

MetricQuotient metric_quotient(const Pseudometric& d) {
  const Carrier& c = d.carrier();
  int n = static_cast<int>(c.size());
  MetricQuotient q;
  q.class_of.assign(static_cast<size_t>(n), -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < static_cast<int>(reps.size()); ++r)
      if (d.d(reps[static_cast<size_t>(r)], i).is_zero()) {
        q.class_of[static_cast<size_t>(i)] = r;
        break;
      }
    if (q.class_of[static_cast<size_t>(i)] < 0) {
      q.class_of[static_cast<size_t>(i)] = static_cast<int>(reps.size());
      reps.push_back(i);
    }
  }
  std::vector<std::string> pts;
  for (int r : reps) pts.push_back(c[static_cast<size_t>(r)]);
  std::vector<Rational01> table(reps.size() * reps.size());
  for (size_t a = 0; a < reps.size(); ++a)
    for (size_t b = 0; b < reps.size(); ++b) table[a * reps.size() + b] = d.d(reps[a], reps[b]);
  q.space = FinMetricSpace(std::move(pts), std::move(table));
  MetricVerdict v = validate_metric(q.space);
  if (!v.ok) throw Error("metric_quotient: quotient fails metric axiom " + v.failed_axiom);
  return q;
}

}  // namespace topogrey
