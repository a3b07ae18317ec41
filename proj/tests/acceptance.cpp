// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Every tolerance here is exact rational equality; nothing is calibrated.

#include <cstdio>
#include <numeric>
#include <string>

#include "topogrey/io.hpp"
#include "topogrey/laws.hpp"
#include "topogrey/yoneda.hpp"

using namespace topogrey;

namespace {

int g_failures = 0;

void verdict(int index, const std::string& name, bool pass, const std::string& note = "") {
  std::printf("%s  criterion %02d  %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              note.empty() ? "" : "  -- ", note.c_str());
  if (!pass) ++g_failures;
}

bool suite_green(const std::string& name, std::uint64_t seed, int count, std::string* note) {
  SuiteOptions opts;
  opts.seed = seed;
  opts.count = count;
  Report rep = check_laws(name, opts);
  for (const auto& c : rep.checks)
    if (!c.pass) {
      *note = name + "/" + c.name + ": " + c.details.dump();
      return false;
    }
  *note = name + " x" + std::to_string(count) + " instances";
  return true;
}

// Criterion 2: d(delta(x), u) = u(x) exactly, over 100 random spaces of at
// most 5 points with q <= 4.
bool enriched_yoneda_exact(std::string* note) {
  Rng rng(20260810);
  size_t functions = 0;
  for (int i = 0; i < 100; ++i) {
    std::int64_t q = rng.range(1, 4);
    FinMetricSpace x = random_metric_space(rng, 5, q);
    for (const auto& u : enumerate_katetov(x, q)) {
      ++functions;
      for (size_t p = 0; p < x.size(); ++p)
        if (katetov_distance(delta_embed(x, static_cast<int>(p)), u) != u[p]) {
          *note = "failed at instance " + std::to_string(i);
          return false;
        }
    }
  }
  *note = std::to_string(functions) + " Katetov functions checked";
  return true;
}

// Criterion 3: the finite-support density bound <= 2 d_H(X, Y), exactly.
bool density_bound_exact(std::string* note) {
  Rng rng(31415);
  size_t checked = 0;
  for (int i = 0; i < 100; ++i) {
    FinMetricSpace z = random_metric_space(rng, 6, rng.range(1, 3));
    std::vector<int> xs, ys;
    for (size_t p = 0; p < z.size(); ++p) {
      if (rng.chance(1, 2) && xs.size() < 3) xs.push_back(static_cast<int>(p));
      if (rng.chance(1, 2) && ys.size() < 3) ys.push_back(static_cast<int>(p));
    }
    if (xs.empty()) xs.push_back(0);
    if (ys.empty()) ys.push_back(static_cast<int>(z.size()) - 1);
    Rational01 dh = hausdorff_distance(z, xs, ys);
    Rational01 bound = dh.trunc_add(dh);
    std::int64_t q = 1;
    for (size_t a = 0; a < z.size(); ++a)
      for (size_t b = 0; b < z.size(); ++b) q = std::lcm(q, z.d(static_cast<int>(a), static_cast<int>(b)).den());
    for (const auto& u : enumerate_katetov(subspace(z, xs), q)) {
      ++checked;
      std::vector<Rational01> uhat = extend_support(z, xs, u);
      std::vector<Rational01> v;
      for (int yp : ys) v.push_back(uhat[static_cast<size_t>(yp)]);
      std::vector<Rational01> vhat = extend_support(z, ys, v);
      if (katetov_distance(uhat, vhat) > bound) {
        *note = "bound exceeded at instance " + std::to_string(i);
        return false;
      }
    }
  }
  *note = std::to_string(checked) + " extensions checked";
  return true;
}

// Criterion 4: towers with q in {1, 2}, depth 2, one-point seed.
bool urysohn_towers(std::string* note) {
  for (std::int64_t q : {std::int64_t{1}, std::int64_t{2}}) {
    FinMetricSpace seed = FinMetricSpace::singleton("o");
    UrysohnTower tower = urysohn_approx(seed, q, 2, 1u << 14);
    if (!tower.complete) {
      *note = "tower construction ran out of budget";
      return false;
    }
    for (int n = 0; n <= tower.depth_built(); ++n)
      if (!extension_property_check(tower, std::min(n, tower.depth_built() - 1)).ok) {
        *note = "extension property fails at level " + std::to_string(n) + " (q=" + std::to_string(q) + ")";
        return false;
      }
    // A tower over an isometric (renamed) seed is isometric to this one.
    FinMetricSpace seed2 = FinMetricSpace::singleton("renamed");
    UrysohnTower tower2 = urysohn_approx(seed2, q, 2, 1u << 14);
    TowerMap tm = tower_map(tower, tower2, {0});
    if (!tm.unique || !find_isometry(tower.space, tower2.space).has_value()) {
      *note = "towers over isometric seeds are not isometric (q=" + std::to_string(q) + ")";
      return false;
    }
    // exact_extension returns exact realizers for every (F, u) with |F| <= 2
    // over the penultimate level, and never returns an inexact point.
    std::vector<int> sections(tower.space.size());
    std::iota(sections.begin(), sections.end(), 0);
    size_t penult = tower.level_sizes[1];
    for (size_t a = 0; a < penult; ++a)
      for (size_t b = a; b < penult; ++b) {
        std::vector<int> f =
            a == b ? std::vector<int>{static_cast<int>(a)} : std::vector<int>{static_cast<int>(a), static_cast<int>(b)};
        for (const auto& u : enumerate_katetov(subspace(tower.space, f), q)) {
          ExactExtensionResult res = exact_extension(tower.space, sections, f, u);
          if (!res.ok) {
            *note = "exact_extension failed at tolerance " + res.failed_tolerance.str() +
                    " (q=" + std::to_string(q) + ")";
            return false;
          }
          for (size_t i = 0; i < f.size(); ++i)
            if (tower.space.d(res.point, f[i]) != u[i]) {
              *note = "returned realizer is not exact";
              return false;
            }
        }
      }
  }
  *note = "extension checks, transport and exact realizers for q in {1,2}";
  return true;
}

// Criterion 10: the whole battery re-run under the same seed produces
// byte-identical reports once timing is excluded.
bool determinism(std::string* note) {
  std::string a, b;
  for (const auto& name : suite_names()) {
    SuiteOptions opts;
    opts.seed = 99;
    opts.count = 6;
    a += check_laws(name, opts).to_json(false).dump();
  }
  for (const auto& name : suite_names()) {
    SuiteOptions opts;
    opts.seed = 99;
    opts.count = 6;
    b += check_laws(name, opts).to_json(false).dump();
  }
  if (a != b) {
    *note = "re-run differs";
    return false;
  }
  *note = std::to_string(a.size()) + " report bytes compared";
  return true;
}

}  // namespace

int main() {
  std::string note;

  verdict(1, "grey algebra laws, 500 seeded instances, exact equality",
          suite_green("grey-algebra", 1, 500, &note), note);
  verdict(2, "enriched Yoneda identity, 100 spaces, q <= 4", enriched_yoneda_exact(&note), note);
  verdict(3, "finite-support density bound <= 2 d_H, 100 subset pairs", density_bound_exact(&note),
          note);
  verdict(4, "Urysohn towers: extension property, transport, exact realizers", urysohn_towers(&note),
          note);
  verdict(5, "discrete Yoneda: Phi/Psi inverse and eta iso on 50 groupoids",
          suite_green("yoneda-discrete", 2, 50, &note), note);
  verdict(6, "uniformization full/faithful/io on 50 families", suite_green("uniformize", 3, 50, &note),
          note);
  verdict(7, "Birkhoff-Kakutani certificates on 50 synthesized filtrations",
          suite_green("birkhoff", 4, 50, &note), note);
  verdict(8, "sandwich bounds exact on 30 norm-equipped groupoids",
          suite_green("sandwich", 5, 30, &note), note);
  verdict(9, "crisp degeneration matches the discrete modules bit-for-bit",
          suite_green("crisp-degeneration", 6, 40, &note) &&
              suite_green("metric-yoneda", 7, 12, &note),
          note);
  verdict(10, "seeded determinism: byte-identical reports", determinism(&note), note);

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all criteria pass\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criteria failing\n", g_failures);
  return 1;
}
