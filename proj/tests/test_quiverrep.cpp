#include "doctest.h"

#include "cotri/builtins.hpp"
#include "cotri/error.hpp"
#include "cotri/homology.hpp"
#include "cotri/quiverrep.hpp"

using namespace cotri;

namespace {

bool iso(const Module& a, const Module& b) { return is_isomorphic(a, b).status == IsoStatus::isomorphic; }

const std::vector<std::string> kQuivers{"A2", "A3", "zigzag3"};

}  // namespace

TEST_CASE("e_lambda, e_rho and stalk dimensions on A3") {
  const Quiver q = Quiver::a3();
  const Module r = catalog_module(lambda2(), "Lambda2");
  // paths out of / into each vertex of 1 -> 2 -> 3
  CHECK(e_lambda(0, r, q).total_dim() == 6);
  CHECK(e_lambda(2, r, q).total_dim() == 2);
  CHECK(e_rho(0, r, q).total_dim() == 2);
  CHECK(e_rho(2, r, q).total_dim() == 6);
  const Representation s = stalk(1, r, q);
  CHECK(s.total_dim() == 2);
  CHECK(s.at(0).is_zero());
  CHECK(s.at(1).dim() == 2);
}

TEST_CASE("representations round-trip through Gamma-modules") {
  const Quiver q = Quiver::zigzag3();
  const Algebra l = lambda2();
  const Representation x = e_lambda(1, catalog_module(l, "S"), q);
  const Representation y = Representation::from_module(x.module(), q, l);
  for (std::size_t v = 0; v < q.vertex_count(); ++v) CHECK(y.at(v).dim() == x.at(v).dim());
  for (const auto& f : rep_hom_basis(x, x)) {
    CHECK(f.is_natural());
    CHECK(RepMap::from_module_map(x, x, f.to_module_map()).to_module_map().matrix() == f.to_module_map().matrix());
  }
}

TEST_CASE("property: e_lambda, e_rho and stalk preserve direct sums") {
  for (const auto& name : builtin_algebra_names()) {
    const Algebra a = *builtin_algebra(name);
    const auto mods = declared_catalog_modules(a);
    for (const auto& qn : kQuivers) {
      const Quiver q = *Quiver::builtin(qn);
      const Algebra gamma = rep_algebra(a, q);
      for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = i; j < mods.size(); ++j) {
          const std::vector<Module> pair{mods[i], mods[j]};
          const Module sum = direct_sum_module(a, pair);
          for (std::size_t v = 0; v < q.vertex_count(); ++v) {
            for (auto* functor : {&e_lambda, &e_rho, &stalk}) {
              const std::vector<Module> parts{(*functor)(v, mods[i], q).module(), (*functor)(v, mods[j], q).module()};
              CHECK(iso((*functor)(v, sum, q).module(), direct_sum_module(gamma, parts)));
            }
          }
        }
    }
  }
}

TEST_CASE("property: Hom adjunction e_lambda -| evaluation") {
  const Algebra k = ka2();
  const CatalogPtr cat = builtin_catalog(k);
  const Quiver q = Quiver::a3();
  const RepUniverse u = generate_rep_universe(cat, q);
  for (std::size_t x = 0; x < u.catalog->size(); ++x) {
    const Representation xr = u.rep(x);
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
      for (const auto& y : cat->modules()) {
        CHECK(rep_hom_basis(e_lambda(i, y, q), xr).size() == hom_dim(y, xr.at(i)));
        CHECK(rep_hom_basis(xr, e_rho(i, y, q)).size() == hom_dim(xr.at(i), y));
      }
  }
}

TEST_CASE("property: cor1 sequence is exact for every admissible G") {
  for (const auto& name : builtin_algebra_names()) {
    const CatalogPtr cat = builtin_catalog(*builtin_algebra(name));
    const ObjectClass inj = ObjectClass::injectives(cat), mod = ObjectClass::all(cat);
    for (const auto& qn : kQuivers) {
      const Quiver q = *Quiver::builtin(qn);
      for (std::size_t k = 0; k < q.vertex_count(); ++k)
        for (const auto& g : cat->modules()) {
          const Cor1Result r = cor1_sequence(q, k, g, inj);
          CHECK(r.exact);
          CHECK(r.sequence.is_valid());
        }
    }
    // mod is not contained in ^perp L when L = mod and the algebra has nonzero Ext^1
    if (name != "F2xF2") {
      bool threw = false;
      for (const auto& g : cat->modules()) {
        try {
          cor1_sequence(Quiver::a2(), 0, g, mod);
        } catch (const PreconditionError&) {
          threw = true;
        }
      }
      CHECK(threw);
    }
  }
}

TEST_CASE("rep universes close") {
  const CatalogPtr cat = builtin_catalog(lambda2());
  const RepUniverse u = generate_rep_universe(cat, Quiver::a2());
  CHECK(u.closed);
  CHECK(u.dropped == 0);
  CHECK(u.catalog->size() == 8);
  CHECK(u.mode() == "closed-universe");
  CHECK_FALSE(u.catalog->complete());
}

TEST_CASE("Phi and Psi membership over A2") {
  const Algebra k = ka2();
  const CatalogPtr cat = builtin_catalog(k);
  const ObjectClass proj = ObjectClass::projectives(cat), inj = ObjectClass::injectives(cat);
  const Quiver q = Quiver::a2();
  const Module s2 = catalog_module(k, "S2"), s1 = catalog_module(k, "S1");
  CHECK(class_membership(RepClassKind::phi, proj, e_lambda(0, s2, q)).member);
  CHECK_FALSE(class_membership(RepClassKind::phi, proj, stalk(1, s1, q)).member);
  CHECK(class_membership(RepClassKind::psi, inj, e_rho(1, s1, q)).member);
  CHECK(class_membership(RepClassKind::rep, inj, stalk(0, s1, q)).member);
  CHECK_FALSE(class_membership(RepClassKind::rep, inj, stalk(0, s2, q)).member);
}

TEST_CASE("QF check and corollary on a grid") {
  for (const auto& name : builtin_algebra_names()) {
    const CatalogPtr cat = builtin_catalog(*builtin_algebra(name));
    const RepUniverse u = generate_rep_universe(cat, Quiver::a2());
    const QfResult r = check_qf(u);
    CHECK(r.agree());
    CHECK(r.qf == (name != "kA2"));
  }
}

TEST_CASE("discrete quivers fail the quiver preconditions") {
  const CatalogPtr cat = builtin_catalog(lambda2());
  const RepUniverse u = generate_rep_universe(cat, Quiver::discrete(2));
  const ObjectClass mod = ObjectClass::all(cat), proj = ObjectClass::projectives(cat);
  CHECK_FALSE(check_prop1(mod, mod, u).preconditions);
}
