#include "doctest.h"

#include "cotri/builtins.hpp"
#include "cotri/cotorsion.hpp"
#include "cotri/error.hpp"
#include "cotri/homology.hpp"

using namespace cotri;

namespace {

struct Classes {
  CatalogPtr cat;
  ObjectClass mod, proj, inj;
};

Classes classes(const Algebra& a) {
  Classes c{builtin_catalog(a), {}, {}, {}};
  c.mod = ObjectClass::all(c.cat);
  c.proj = ObjectClass::projectives(c.cat);
  c.inj = ObjectClass::injectives(c.cat);
  return c;
}

}  // namespace

TEST_CASE("orthogonals over kA2") {
  const Classes k = classes(ka2());
  CHECK(perp1(k.proj, Side::right).same_members(k.mod));
  CHECK(perp1(k.mod, Side::right).same_members(k.inj));
  CHECK(perp1(k.mod, Side::left).same_members(k.proj));
  CHECK(perp1(k.inj, Side::left).same_members(k.mod));
}

TEST_CASE("trivial cotorsion pairs are complete and hereditary") {
  for (const auto& name : builtin_algebra_names()) {
    const Classes c = classes(*builtin_algebra(name));
    CHECK(check_cotorsion_pair(c.proj, c.mod).verdict);
    CHECK(check_cotorsion_pair(c.mod, c.inj).verdict);
    CHECK(check_complete(c.proj, c.mod).verdict);
    const PairReport h = check_hereditary(c.mod, c.inj);
    CHECK(h.verdict);
    CHECK(h.report.certificate == "proved");
  }
}

TEST_CASE("a non-pair records an Ext failure") {
  const Classes k = classes(ka2());
  const PairReport r = check_cotorsion_pair(k.mod, k.proj);
  CHECK_FALSE(r.verdict);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures.front().kind == "ext");
  CHECK_FALSE(r.report.counterexamples.empty());
}

TEST_CASE("resolving and coresolving classes") {
  const Classes k = classes(ka2());
  CHECK(check_resolving(k.proj).verdict);
  CHECK(check_coresolving(k.inj).verdict);
  const ObjectClass s1 = ObjectClass(k.cat, {*k.cat->index_of(catalog_module(ka2(), "S1"))}, "S1");
  CHECK_FALSE(check_resolving(s1).verdict);
}

TEST_CASE("special approximation sequences") {
  const Classes l = classes(lambda2());
  for (const auto& m : l.cat->modules()) {
    std::string method;
    const auto pre = special_precover_sequence(l.proj, l.mod, m, {}, &method);
    REQUIRE(pre);
    CHECK(is_special_precover_sequence(l.proj, l.mod, *pre));
    CHECK_FALSE(method.empty());
    const auto env = special_preenvelope_sequence(l.mod, l.inj, m);
    REQUIRE(env);
    CHECK(is_special_preenvelope_sequence(l.mod, l.inj, *env));
  }
}

TEST_CASE("Salce construction produces special sequences") {
  const Classes k = classes(ka2());
  for (const auto& m : k.cat->modules()) {
    const SalceResult a = salce_construction(k.proj, k.mod, m, Direction::precover);
    REQUIRE(a.sequence);
    CHECK(is_special_precover_sequence(k.proj, k.mod, *a.sequence));
    const SalceResult b = salce_construction(k.mod, k.inj, m, Direction::preenvelope);
    REQUIRE(b.sequence);
    CHECK(is_special_preenvelope_sequence(k.mod, k.inj, *b.sequence));
  }
}

TEST_CASE("triplets") {
  const Classes l = classes(lambda2()), k = classes(ka2());
  const TripletReport t = check_triplet(l.mod, l.proj, l.mod);
  CHECK(t.verdict());
  CHECK(t.hereditary_proved);
  CHECK_FALSE(check_triplet(k.mod, k.proj, k.mod).verdict());
}

TEST_CASE("property: the pullback middle term is projective for every C") {
  for (const auto& name : builtin_algebra_names()) {
    const Classes c = classes(*builtin_algebra(name));
    for (const auto& m : c.cat->modules()) {
      const ProjectiveConstruction pc = projectives_from_triplet(c.proj, c.mod, c.inj, m);
      CHECK(pc.sequence.is_valid());
      CHECK(pc.middle_projective);
      CHECK(is_projective_module(pc.sequence.middle()));
      CHECK(isomorphism_of_indecomposables(pc.sequence.right(), m).has_value());
    }
  }
}

TEST_CASE("projective and injective predicates") {
  const Algebra k = ka2();
  CHECK(is_projective_module(catalog_module(k, "S2")));
  CHECK_FALSE(is_injective_module(catalog_module(k, "S2")));
  CHECK(is_injective_module(catalog_module(k, "S1")));
  CHECK_FALSE(is_projective_module(catalog_module(k, "S1")));
}
