#include "doctest.h"

#include "cotri/algebra.hpp"
#include "cotri/builtins.hpp"
#include "cotri/error.hpp"
#include "cotri/quiver.hpp"
#include "oracles.hpp"

using namespace cotri;

TEST_CASE("quiver path sets") {
  const Quiver a3 = Quiver::a3();
  CHECK(a3.vertex_count() == 3);
  CHECK(a3.is_acyclic());
  CHECK(path_set(a3, 0, 2).size() == 1);
  CHECK(path_set(a3, 2, 0).empty());
  CHECK(all_paths(a3).size() == 6);
  const Quiver z = Quiver::zigzag3();
  CHECK(all_paths(z).size() == 5);
  CHECK(Quiver::discrete(2).is_discrete());
  CHECK_FALSE(Quiver::loop().is_acyclic());
  CHECK_FALSE(Quiver::builtin("nope").has_value());
}

TEST_CASE("built-in algebras") {
  CHECK(lambda2().dim() == 2);
  CHECK(ka2().dim() == 3);
  CHECK(f2xf2().dim() == 2);
  for (const auto& name : builtin_algebra_names()) {
    const auto a = builtin_algebra(name);
    REQUIRE(a);
    CHECK(a->field_char() == 2);
    // associativity of the structure constants
    for (std::size_t i = 0; i < a->dim(); ++i)
      for (std::size_t j = 0; j < a->dim(); ++j)
        for (std::size_t k = 0; k < a->dim(); ++k) {
          const auto x = a->basis_vector(i), y = a->basis_vector(j), z = a->basis_vector(k);
          CHECK(a->multiply(a->multiply(x, y), z) == a->multiply(x, a->multiply(y, z)));
        }
  }
}

TEST_CASE("path algebra with a relation is finite dimensional") {
  const Algebra a = make_path_algebra(Quiver::loop(), {{{1, {"x", "x"}}}}, 3, 8, "k[x]/x^2");
  CHECK(a.dim() == 2);
  CHECK(a.field_char() == 3);
  CHECK_THROWS_AS(make_path_algebra(Quiver::loop(), {}, 2, 4), Error);
}

TEST_CASE("module validation rejects non-actions") {
  const Algebra l = lambda2();
  const auto bad = ExactMatrix::from_rows(2, {{1}});
  CHECK_THROWS_AS(Module(l, {ExactMatrix::identity(1, 2), bad}), Error);
  CHECK_NOTHROW(Module(l, {ExactMatrix::identity(1, 2), ExactMatrix(1, 1, 2)}));
}

TEST_CASE("kernels, cokernels and short exact sequences") {
  const Algebra k = ka2();
  const Module p = catalog_module(k, "P"), s1 = catalog_module(k, "S1"), s2 = catalog_module(k, "S2");
  const auto maps = hom_basis(p, s1);
  REQUIRE(maps.size() == 1);
  const auto ker = kernel(maps[0]);
  CHECK(ker.module.dim() == 1);
  CHECK(isomorphism_of_indecomposables(ker.module, s2).has_value());
  const ShortExactSequence ses{ker.inclusion, maps[0]};
  CHECK(ses.is_valid());
  const ShortExactSequence bad{ker.inclusion, ModuleMap::zero(p, s1)};
  CHECK_FALSE(bad.is_valid());
}

TEST_CASE("splitting a direct sum recovers the summands") {
  const Algebra k = ka2();
  const std::vector<Module> parts{catalog_module(k, "P"), catalog_module(k, "S1"), catalog_module(k, "S1")};
  const Module sum = direct_sum_module(k, parts);
  const SplitResult split = split_indecomposables(sum);
  REQUIRE(split.summands.size() == 3);
  CHECK(split.certified);
  const auto cat = declared_catalog_modules(k);
  CHECK(decompose(sum, cat) == std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("property: Hom dimension agrees with brute-force counting") {
  for (const auto& name : builtin_algebra_names()) {
    const Algebra a = *builtin_algebra(name);
    std::vector<Module> mods = declared_catalog_modules(a);
    const auto n = mods.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const std::vector<Module> pair{mods[i], mods[j]};
        mods.push_back(direct_sum_module(a, pair));
      }
    for (const auto& m : mods)
      for (const auto& x : mods)
        if (m.dim() * x.dim() <= 16) CHECK(hom_dim(m, x) == oracle::hom_dim(m, x));
  }
}

TEST_CASE("property: isomorphism test agrees with the brute-force oracle") {
  const Algebra k = ka2();
  const auto cat = declared_catalog_modules(k);
  for (const auto& m : cat)
    for (const auto& n : cat) {
      const IsoResult r = is_isomorphic(m, n);
      CHECK((r.status == IsoStatus::isomorphic) == oracle::isomorphic(m, n));
    }
}
