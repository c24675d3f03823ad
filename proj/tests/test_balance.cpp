#include "doctest.h"

#include "cotri/balance.hpp"
#include "cotri/builtins.hpp"
#include "cotri/error.hpp"

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

TEST_CASE("(Proj, Inj) is balanced with canonical approximations") {
  for (const auto& name : builtin_algebra_names()) {
    const Classes c = classes(*builtin_algebra(name));
    const BalanceCertificate b = check_balanced(c.proj, c.inj);
    CHECK(b.verdict);
    CHECK(b.entries.size() == c.cat->size());
    CHECK(b.counterexamples.empty());
    CHECK(check_admissible(c.proj, c.inj).verdict);
  }
}

TEST_CASE("an unbalanced pair yields a counterexample") {
  const Classes k = classes(ka2());
  const BalanceCertificate b = check_balanced(k.mod, k.proj);
  CHECK_FALSE(b.verdict);
  REQUIRE_FALSE(b.counterexamples.empty());
  CHECK_FALSE(b.report.counterexamples.empty());
}

TEST_CASE("triplet implies balance") {
  const Classes l = classes(lambda2());
  CHECK(triplet_implies_balance(l.mod, l.proj, l.mod).verdict());
  const Classes k = classes(ka2());
  CHECK_THROWS_AS(triplet_implies_balance(k.mod, k.proj, k.mod), PreconditionError);
}

TEST_CASE("balance to triplet") {
  const Classes k = classes(ka2());
  const BalanceToTriplet pi = balance_to_triplet(k.proj, k.inj);
  CHECK(pi.verdict());
  REQUIRE(pi.g);
  CHECK(pi.g->same_members(k.mod));
  const BalanceToTriplet mm = balance_to_triplet(k.mod, k.mod);
  CHECK(mm.failed_hypothesis == 2);
  CHECK_FALSE(mm.verdict());
}

TEST_CASE("intersections and Smd uniqueness") {
  const Classes k = classes(ka2());
  CHECK(check_intersections(k.proj, k.mod, k.mod, k.inj).verdict);
  CHECK(check_smd_uniqueness(k.proj, k.proj, k.inj).verdict);
}

TEST_CASE("equivalence corollary") {
  const Classes l = classes(lambda2());
  const EquivalenceReport a = check_equivalence_corollary(l.mod, l.proj, l.proj, l.mod);
  CHECK(a.preconditions);
  CHECK(a.agree());
  CHECK(a.h_equals_g);
  const EquivalenceReport b = check_equivalence_corollary(l.proj, l.mod, l.mod, l.inj);
  CHECK(b.preconditions);
  CHECK(b.balanced);
  const Classes k = classes(ka2());
  const EquivalenceReport c = check_equivalence_corollary(k.mod, k.inj, k.proj, k.mod);
  CHECK_FALSE(c.preconditions);
  CHECK(c.report.failed_hypothesis.has_value());
}
