#pragma once

// Representations of a finite acyclic quiver Q in mod(Lambda).
//
// A representation is stored together with the corresponding module over
// Gamma = Lambda (x) kQ, so Hom, Ext and every class construction of the other
// modules apply to Rep(Q, mod Lambda) unchanged. The Gamma-module of a
// representation lists the vertex components in vertex order.
//
// Paths compose as in quiver.hpp: for an arrow a: j -> k and a path p ending at
// j, "a p" is p followed by a.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/balance.hpp"
#include "cotri/catalog.hpp"
#include "cotri/cotorsion.hpp"
#include "cotri/quiver.hpp"
#include "cotri/report.hpp"

namespace cotri {

/// Lambda (x) kQ, one algebra object per (Lambda, Q) pair.
Algebra rep_algebra(const Algebra& lambda, const Quiver& q);

class Representation {
 public:
  Representation() = default;
  /// Validates that every arrow map joins the right vertex modules.
  Representation(Quiver q, Algebra lambda, std::vector<Module> vertex_modules, std::vector<ModuleMap> arrow_maps,
                 std::string name = {});
  /// Reads the vertex components of a Gamma-module.
  static Representation from_module(const Module& m, const Quiver& q, const Algebra& lambda);
  static Representation zero(const Quiver& q, const Algebra& lambda);

  const Quiver& quiver() const { return q_; }
  const Algebra& lambda() const { return lambda_; }
  const Module& at(std::size_t v) const { return vertex_.at(v); }
  const ModuleMap& arrow_map(std::size_t a) const { return arrow_.at(a); }
  const std::vector<Module>& vertex_modules() const { return vertex_; }
  const std::string& name() const { return module_.name(); }
  /// The Gamma-module.
  const Module& module() const { return module_; }
  std::size_t total_dim() const { return module_.dim(); }
  /// Offset of vertex v inside the Gamma-module.
  std::size_t offset(std::size_t v) const { return offsets_.at(v); }
  /// The composite X_p along a path.
  ModuleMap path_map(const Path& p) const;

 private:
  Quiver q_;
  Algebra lambda_;
  std::vector<Module> vertex_;
  std::vector<ModuleMap> arrow_;
  std::vector<std::size_t> offsets_;
  Module module_;
};

struct RepMap {
  Representation source, target;
  std::vector<ModuleMap> components;  // f_v: X_v -> Y_v

  /// Checks Y_a f_i = f_j X_a for every arrow a: i -> j.
  bool is_natural() const;
  ModuleMap to_module_map() const;
  static RepMap from_module_map(const Representation& x, const Representation& y, const ModuleMap& f);
};

/// Copies of M indexed by Q(i, j); arrows send the copy of p to the copy of "a p".
Representation e_lambda(std::size_t i, const Module& m, const Quiver& q);
/// Copies of M indexed by Q(j, i); arrows are the canonical projections.
Representation e_rho(std::size_t i, const Module& m, const Quiver& q);
/// M at vertex i, zero elsewhere.
Representation stalk(std::size_t i, const Module& m, const Quiver& q);

/// The Rep map e_lambda^k(G) -> s_k(G) that is the identity on the trivial-path copy.
ModuleMap e_lambda_to_stalk(std::size_t k, const Module& g, const Quiver& q);

struct PhiPsi {
  ModuleMap phi;  // (+)_{t(a)=i} X_{s(a)} -> X_i
  ModuleMap psi;  // X_i -> (+)_{s(a)=i} X_{t(a)}
  Module c;       // coker phi
  Module k;       // ker psi
};
PhiPsi phi_psi(const Representation& x, std::size_t i);

enum class RepClassKind { rep, phi, psi };
std::string to_string(RepClassKind k);

struct Membership {
  bool member = true;
  std::string reason;  // first failing vertex and condition
};
Membership class_membership(RepClassKind kind, const ObjectClass& base, const Representation& x);

std::vector<RepMap> rep_hom_basis(const Representation& x, const Representation& y);
std::size_t rep_ext_dim(std::size_t n, const Representation& x, const Representation& y);

enum class AdjunctionVariant { e_lambda_left, e_rho_right, c_s, s_k };
std::string to_string(AdjunctionVariant v);

struct AdjunctionResult {
  bool applicable = true;  // side condition of the c-s / s-k variants
  std::size_t rep_side = 0;
  std::size_t base_side = 0;
  bool holds() const { return rep_side == base_side; }
};

/// Compares dim Ext^m on both sides of the adjunction isomorphism. Both sides are
/// computed even when the side condition fails.
AdjunctionResult adjunction_check(AdjunctionVariant which, std::size_t i, const Module& y, const Representation& x,
                                  std::size_t m);

struct Cor1Result {
  ShortExactSequence sequence;  // 0 -> K -> e_lambda^k(G) -> s_k(G) -> 0 as Gamma-maps
  bool exact = false;
  /// Set when X was supplied and satisfies k_k(X) in L and psi_{X_k} epic.
  std::optional<bool> hom_exact_against_x;
  std::optional<std::string> side_condition_failure;
  Witness witness;
};

/// Throws PreconditionError unless G lies in ^{perp_1} L.
Cor1Result cor1_sequence(const Quiver& q, std::size_t k, const Module& g, const ObjectClass& l,
                         const std::optional<Representation>& x = std::nullopt);

struct UniverseOptions {
  /// Largest dimension of a vertex component.
  std::size_t dim_bound = 8;
  /// Upper limit on the number of indecomposables kept.
  std::size_t max_size = 200;
  /// Rounds of syzygy / cosyzygy closure.
  std::size_t max_rounds = 6;
};

struct RepUniverse {
  Quiver quiver;
  Algebra lambda;
  Algebra gamma;
  CatalogPtr base;
  CatalogPtr catalog;  // Gamma-module universe, never declared complete
  /// True when the closure reached a fixpoint without dropping modules at the bound.
  bool closed = false;
  std::size_t dropped = 0;

  Representation rep(std::size_t i) const { return Representation::from_module(catalog->module(i), quiver, lambda); }
  std::string mode() const { return closed ? "closed-universe" : "evidence"; }
};

/// Indecomposable summands of stalks, e_lambda and e_rho of base catalog modules,
/// closed under syzygies and cosyzygies, deduplicated up to isomorphism.
RepUniverse generate_rep_universe(const CatalogPtr& base, const Quiver& q, const UniverseOptions& opts = {});

/// Rep(Q, base), Phi(base) or Psi(base) over the universe, named "Rep(X)", "Phi(X)", "Psi(X)".
ObjectClass rep_class(const RepUniverse& u, RepClassKind kind, const ObjectClass& base);

struct RepCheckReport {
  bool preconditions = true;
  bool verdict = false;
  CheckReport report;
};

/// Conclusions (1)-(3) from balance of (Phi(F), Psi(L)).
RepCheckReport check_prop1(const ObjectClass& f, const ObjectClass& l, const RepUniverse& u,
                           const CheckOptions& opts = {});

struct Cor2Result {
  bool preconditions = false;
  bool h_equals_g = false;
  bool rep_balanced = false;
  bool agree() const { return h_equals_g == rep_balanced; }
  BalanceCertificate rep_balance;
  CheckReport report;
};

/// H = G versus balance of (Phi(F), Psi(L)) in Rep(Q, mod Lambda).
Cor2Result check_cor2(const ObjectClass& f, const ObjectClass& h, const ObjectClass& g, const ObjectClass& l,
                      const RepUniverse& u, const CheckOptions& opts = {});

struct QfResult {
  bool qf = false;            // Proj = Inj
  bool rep_balanced = false;  // (Phi(mod), Psi(mod)) balanced
  std::optional<bool> lifted_triplet;  // (Phi(mod), Rep(Q, Proj), Psi(mod)) when qf
  bool agree() const { return qf == rep_balanced && (!qf || lifted_triplet.value_or(false)); }
  CheckReport report;
};

QfResult check_qf(const RepUniverse& u, const CheckOptions& opts = {});

}  // namespace cotri
