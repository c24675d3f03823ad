#pragma once

// Projective covers, injective envelopes, syzygies, Ext dimensions, canonical
// class approximations, class (co)resolutions and Hom-acyclicity tests.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/catalog.hpp"

namespace cotri {

/// P_i = Lambda e_i for each primitive idempotent, in idempotent order.
std::vector<Module> indecomposable_projectives(const Algebra& a);
/// S_i = top of P_i.
std::vector<Module> simple_modules(const Algebra& a);
/// I_i = D(e_i Lambda).
std::vector<Module> indecomposable_injectives(const Algebra& a);

/// Vector-space dual of a module over the opposite algebra; `target` must be
/// the algebra whose opposite the module lives over (or its opposite).
Module dual_module(const Module& m, const Algebra& target);

struct Cover {
  Module object;
  ModuleMap map;  // object -> M (cover) or M -> object (envelope)
  /// Multiplicity of each indecomposable projective (injective).
  std::vector<std::size_t> multiplicities;
};

Cover projective_cover(const Module& m);
Cover injective_envelope(const Module& m);

/// Omega^n M.
Module syzygy(const Module& m, std::size_t n);
/// Omega^{-n} M.
Module cosyzygy(const Module& m, std::size_t n);

/// dim Ext^n(M, N) via the minimal projective resolution of M.
std::size_t ext_dim(std::size_t n, const Module& m, const Module& n_mod);

struct HigherExtResult {
  bool vanishes = true;
  /// True when the syzygy chain closed up (zero or repeating summand types),
  /// which proves vanishing for every n > 0, not only up to the bound.
  bool proved = false;
  std::string certificate;  // "syzygy zero at step k", "summand types repeat at step k", "bound"
  std::size_t checked_up_to = 0;
  /// On failure: (n, index into targets, dim Ext^n).
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> failure;
};

/// Ext^n(M, N) = 0 for all N in targets and n >= 1, checked for n <= bound with
/// the syzygy-closure certificate.
HigherExtResult higher_ext_vanishing(const Module& m, const std::vector<Module>& targets, std::size_t bound);

/// Covariant dual: Ext^n(N, M) = 0 for all N in sources, via cosyzygies of M.
HigherExtResult higher_ext_vanishing_dual(const std::vector<Module>& sources, const Module& m, std::size_t bound);

/// Evaluation map (+)_G G^{dim Hom(G, M)} -> M over the generators of F.
ModuleMap canonical_precover(const ObjectClass& f, const Module& m);
/// Coevaluation M -> (+)_G G^{dim Hom(M, G)} over the generators of L.
ModuleMap canonical_preenvelope(const ObjectClass& l, const Module& m);

/// True when Hom(G, cover) -> Hom(G, M) is onto for every generator G.
bool is_precover(const ObjectClass& f, const ModuleMap& cover);
bool is_preenvelope(const ObjectClass& l, const ModuleMap& envelope);

enum class Variance { covariant, contravariant };

struct ResolutionComplex {
  Module target;  // M
  /// Left resolution: terms[0] -> M, terms[k+1] -> terms[k]; differentials[0] is
  /// terms[0] -> M. Right coresolution: M -> terms[0] -> terms[1] ...
  std::vector<Module> terms;
  std::vector<ModuleMap> differentials;
  Variance variance = Variance::covariant;  // covariant: left resolution
  std::string class_name;
};

/// Iterated canonical precovers on kernels: ... -> F_1 -> F_0 -> M.
ResolutionComplex class_resolution(const Module& m, const ObjectClass& f, std::size_t length);
/// Iterated canonical preenvelopes on cokernels: M -> L^0 -> L^1 -> ...
ResolutionComplex class_coresolution(const Module& m, const ObjectClass& l, std::size_t length);

/// The complex X_0 -> X_1 -> ... -> X_k given by maps[j]: X_j -> X_{j+1}
/// (consecutive composites zero), in positional order as listed.
std::vector<Module> complex_objects(const std::vector<ModuleMap>& maps);
/// Consecutive composites vanish and the maps chain.
bool is_complex(const std::vector<ModuleMap>& maps);

struct AcyclicityResult {
  bool acyclic = true;
  std::optional<std::size_t> generator;  // universe index of the witness generator
  std::optional<std::size_t> position;   // object index in the complex where exactness fails
  std::string detail;
};

/// Applies Hom(T, -) (covariant) or Hom(-, T) (contravariant) to
/// 0 -> X_0 -> ... -> X_k -> 0 for every generator T and checks exactness.
AcyclicityResult is_hom_acyclic(const std::vector<ModuleMap>& maps, const ObjectClass& t, Variance variance);

/// Same test against a single module.
AcyclicityResult is_hom_acyclic_against(const std::vector<ModuleMap>& maps, const Module& t, Variance variance);

/// "Left exact" 0 -> K -> F -> M -> 0: K -> F mono and im = ker; with strict,
/// F -> M must also be onto. Dually for right exact.
bool is_left_exact(const ModuleMap& k_to_f, const ModuleMap& f_to_m, bool strict);
bool is_right_exact(const ModuleMap& m_to_l, const ModuleMap& l_to_c, bool strict);

}  // namespace cotri
