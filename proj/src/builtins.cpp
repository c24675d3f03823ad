#include "cotri/builtins.hpp"

#include <map>
#include <mutex>

#include "cotri/error.hpp"

namespace cotri {

namespace {

ExactMatrix mat(const std::vector<std::vector<long long>>& rows) { return ExactMatrix::from_rows(2, rows); }

}  // namespace

Algebra lambda2() {
  static const Algebra a = make_path_algebra(Quiver::loop("x"), {{{1, {"x", "x"}}}}, 2, 8, "Lambda2");
  return a;
}

Algebra ka2() {
  static const Algebra a = make_path_algebra(Quiver::a2(), {}, 2, 8, "kA2");
  return a;
}

Algebra f2xf2() {
  static const Algebra a = make_path_algebra(Quiver::discrete(2), {}, 2, 8, "F2xF2");
  return a;
}

std::optional<Algebra> builtin_algebra(const std::string& name) {
  if (name == "Lambda2") return lambda2();
  if (name == "kA2") return ka2();
  if (name == "F2xF2") return f2xf2();
  return std::nullopt;
}

std::vector<std::string> builtin_algebra_names() { return {"Lambda2", "kA2", "F2xF2"}; }

std::vector<Module> declared_catalog_modules(const Algebra& a) {
  // basis orders: Lambda2 {e, x}; kA2 {e1, e2, a}; F2xF2 {e1, e2}
  if (a == lambda2()) {
    return {Module(a, {mat({{1}}), mat({{0}})}, "S"),
            Module(a, {mat({{1, 0}, {0, 1}}), mat({{0, 0}, {1, 0}})}, "Lambda2")};
  }
  if (a == ka2()) {
    return {Module(a, {mat({{1}}), mat({{0}}), mat({{0}})}, "S1"),
            Module(a, {mat({{0}}), mat({{1}}), mat({{0}})}, "S2"),
            Module(a, {mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}}), mat({{0, 0}, {1, 0}})}, "P")};
  }
  if (a == f2xf2()) {
    return {Module(a, {mat({{1}}), mat({{0}})}, "S1"), Module(a, {mat({{0}}), mat({{1}})}, "S2")};
  }
  throw Error("declared_catalog_modules: not a built-in algebra");
}

CatalogPtr builtin_catalog(const Algebra& a) {
  static std::mutex mu;
  static std::map<const void*, CatalogPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[a.identity()];
  if (!slot) slot = Catalog::make(a, declared_catalog_modules(a), true, a.name());
  return slot;
}

Module catalog_module(const Algebra& a, const std::string& name) {
  for (const auto& m : builtin_catalog(a)->modules())
    if (m.name() == name) return m;
  throw Error("catalog_module: no module named '" + name + "' in the catalog of " + a.name());
}

}  // namespace cotri
