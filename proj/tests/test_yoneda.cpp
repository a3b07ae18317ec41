#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "topogrey/laws.hpp"
#include "topogrey/yoneda.hpp"

using namespace topogrey;

namespace {

CanonicalStructure atoms_structure(const FinGroupoid& g) {
  std::vector<Subgroupoid> subs;
  for (size_t x = 0; x < g.object_count(); ++x) subs.push_back(Subgroupoid{{g.unit[x]}});
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& s : subs) sections.push_back(default_sections(g, s));
  return canonical_structure(g, subs, sections);
}

}  // namespace

TEST_CASE("the Z/2 canonical structure has two endomorphisms") {
  FinGroupoid z2 = FinGroupoid::cyclic_group(2);
  CanonicalStructure cs = atoms_structure(z2);
  CHECK(enumerate_homs(cs.family, 0, 0).size() == 2);
  EtaReport rep = verify_eta_iso(cs);
  CHECK(rep.ok);
}

TEST_CASE("Phi on eta images is the coset family of the morphism") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  std::vector<Subgroupoid> subs{Subgroupoid{{0}}, generated_subgroupoid(z4, {2})};
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& s : subs) sections.push_back(default_sections(z4, s));
  CanonicalStructure cs = canonical_structure(z4, subs, sections);
  for (int g = 0; g < 4; ++g) {
    FiberMap h = eta_of(cs, g);
    CosetFamily fam = yoneda_phi(cs, 0, 0, h);
    // Phi(eta(g)) = (gU)_U for every sort.
    for (int u = 0; u < cs.sort_count(); ++u) {
      REQUIRE(fam[static_cast<size_t>(u)] >= 0);
      CHECK(fam[static_cast<size_t>(u)] == cs.cosets[static_cast<size_t>(u)].class_of[static_cast<size_t>(g)]);
    }
    CHECK(yoneda_psi(cs, 0, 0, fam) == h);
  }
  EtaReport rep = verify_eta_iso(cs);
  CHECK(rep.ok);
}

TEST_CASE("incoherent families are rejected with the violating pair") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  std::vector<Subgroupoid> subs{Subgroupoid{{0}}, generated_subgroupoid(z4, {2})};
  std::vector<std::vector<std::vector<int>>> sections;
  for (const auto& s : subs) sections.push_back(default_sections(z4, s));
  CanonicalStructure cs = canonical_structure(z4, subs, sections);
  // The family ({1}*U0, 0*U1) is incoherent: 1 projects to the class of 1.
  CosetFamily broken{cs.cosets[0].class_of[1], cs.cosets[1].class_of[0]};
  CHECK_FALSE(family_coherent(cs, 0, broken));
  CHECK_THROWS_WITH_AS(yoneda_psi(cs, 0, 0, broken),
                       doctest::Contains("incoherent"), Error);
}

TEST_CASE("eta is an isomorphism for small groups and pair groupoids") {
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8}) {
    FinGroupoid g = FinGroupoid::cyclic_group(n);
    EtaReport rep = verify_eta_iso(atoms_structure(g));
    CHECK(rep.ok);
    REQUIRE(rep.hom_counts.size() == 1);
    CHECK(std::get<2>(rep.hom_counts[0]) == static_cast<size_t>(n));
    CHECK(std::get<3>(rep.hom_counts[0]) == static_cast<size_t>(n));
  }
  FinGroupoid pair3 = FinGroupoid::pair_groupoid(3);
  EtaReport rep = verify_eta_iso(atoms_structure(pair3));
  CHECK(rep.ok);
  for (auto& [x, y, gh, iso] : rep.hom_counts) {
    CHECK(gh == 1);
    CHECK(iso == 1);
  }
  FinGroupoid disc = FinGroupoid::discrete(3);
  EtaReport drep = verify_eta_iso(atoms_structure(disc));
  CHECK(drep.ok);
  for (auto& [x, y, gh, iso] : drep.hom_counts) CHECK(iso == (x == y ? 1u : 0u));
}

TEST_CASE("canonical structure preconditions") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  Subgroupoid even = generated_subgroupoid(z4, {2});
  // Sections missing the unit section are rejected.
  std::vector<std::vector<std::vector<int>>> sections{{{1, 3}}};
  CHECK_THROWS_AS(canonical_structure(z4, {even}, sections), Error);
  // Sections that are not small are rejected.
  std::vector<std::vector<std::vector<int>>> big{{even.morphisms, {0, 1, 2, 3}}};
  CHECK_THROWS_AS(canonical_structure(z4, {even}, big), Error);
}

TEST_CASE("yoneda-discrete law suite stays green") {
  SuiteOptions opts;
  opts.seed = 31;
  opts.count = 25;
  Report rep = check_laws("yoneda-discrete", opts);
  for (const auto& c : rep.checks) {
    INFO(c.name, ": ", c.details.dump());
    CHECK(c.pass);
  }
}
