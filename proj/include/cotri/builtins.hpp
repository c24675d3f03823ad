#pragma once

// Built-in algebras over F_2 and their declared indecomposable catalogs.
//
//   Lambda2 = F_2[x]/(x^2)      catalog {S, Lambda2}
//   kA2     = F_2(1 -> 2)       catalog {S1, S2, P}
//   F2xF2   = F_2 x F_2         catalog {S1, S2}

#include <optional>
#include <string>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/catalog.hpp"

namespace cotri {

Algebra lambda2();
Algebra ka2();
Algebra f2xf2();

/// "Lambda2", "kA2", "F2xF2"; nullopt for an unknown name.
std::optional<Algebra> builtin_algebra(const std::string& name);
std::vector<std::string> builtin_algebra_names();

/// Declared catalog modules, built directly from action matrices.
std::vector<Module> declared_catalog_modules(const Algebra& builtin);
/// The declared complete catalog of a built-in algebra.
CatalogPtr builtin_catalog(const Algebra& builtin);

/// Module of a declared catalog by name, e.g. ("kA2", "S1").
Module catalog_module(const Algebra& builtin, const std::string& name);

}  // namespace cotri
