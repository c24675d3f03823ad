#pragma once

// Finite-dimensional associative unital F_p-algebras, their finite-dimensional
// left modules, module maps, and the finite abelian-category constructions on
// them (kernels, cokernels, images, biproducts, pullbacks, pushouts).
//
// All objects are immutable after construction. Modules are compared only via
// is_isomorphic / decompose, never structurally.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cotri/linalg.hpp"
#include "cotri/quiver.hpp"

namespace cotri {

class Algebra {
 public:
  struct Spec {
    std::uint32_t p = 2;
    std::vector<std::string> labels;
    /// c[(i * dim + j) * dim + k]: b_i b_j = sum_k c_ijk b_k
    std::vector<Residue> constants;
    Vec unit;
    /// Complete set of orthogonal primitive idempotents (as elements).
    std::vector<Vec> idempotents;
    /// Spanning set of the Jacobson radical.
    std::vector<Vec> radical;
    /// Elements that together with the idempotents generate the algebra.
    std::vector<Vec> generators;
    std::string name;
  };

  Algebra() = default;
  /// Validates associativity, the unit, orthogonality of the idempotents and
  /// nilpotency of the radical.
  explicit Algebra(Spec spec);

  std::uint32_t field_char() const;
  std::size_t dim() const;
  const std::string& name() const;
  const std::vector<std::string>& labels() const;
  Residue constant(std::size_t i, std::size_t j, std::size_t k) const;
  const Vec& unit() const;
  const std::vector<Vec>& idempotents() const;
  /// Basis of the radical (pivot-reduced from the spanning set).
  const std::vector<Vec>& radical() const;
  const std::vector<Vec>& generators() const;

  Vec multiply(const Vec& a, const Vec& b) const;
  Vec basis_vector(std::size_t i) const;

  /// Same basis, multiplication reversed. Cached; the opposite of the
  /// opposite is a fresh algebra.
  Algebra opposite() const;

  bool valid() const { return impl_ != nullptr; }
  bool operator==(const Algebra& o) const { return impl_ == o.impl_; }
  const void* identity() const { return impl_.get(); }

  struct Impl;

 private:
  explicit Algebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// kQ / (relations), where each relation is a list of (coefficient, path) terms and
/// paths are given as arrow labels in traversal order. The quotient must be
/// finite dimensional: some power J^N with N <= max_length must lie in the ideal.
struct PathTerm {
  long long coefficient = 1;
  std::vector<std::string> arrows;
};
using PathRelation = std::vector<PathTerm>;

Algebra make_path_algebra(const Quiver& q, const std::vector<PathRelation>& relations, std::uint32_t p,
                          std::size_t max_length = 8, std::string name = {});

/// Lambda (x) kQ for an acyclic quiver; its modules are Q-shaped representations in mod(Lambda).
/// Basis element (a, path) has index a * |paths| + path_index, paths as in all_paths(q).
Algebra tensor_with_path_algebra(const Algebra& lambda, const Quiver& q, std::string name = {});

class Module;
/// Per-algebra memo for modules that depend only on the algebra (projectives,
/// simples, ...). `make` runs at most once per (algebra, key).
std::vector<Module> algebra_memo(const Algebra& algebra, const std::string& key,
                                 const std::function<std::vector<Module>()>& make);

class Module {
 public:
  Module() = default;
  /// Validates that the actions form a module structure.
  Module(Algebra algebra, std::vector<ExactMatrix> actions, std::string name = {});
  /// Skips validation; for constructions that are modules by construction.
  static Module trusted(Algebra algebra, std::vector<ExactMatrix> actions, std::string name = {});
  static Module zero(const Algebra& algebra);

  const Algebra& algebra() const { return algebra_; }
  std::size_t dim() const;
  std::uint32_t field_char() const { return algebra_.field_char(); }
  const ExactMatrix& action(std::size_t basis_index) const;
  const std::vector<ExactMatrix>& actions() const;
  ExactMatrix action_of(const Vec& element) const;
  const std::string& name() const;
  Module renamed(std::string name) const;
  bool is_zero() const { return dim() == 0; }
  std::uint64_t id() const;

  /// Change of basis adapted to the algebra's idempotents: columns of
  /// `adapted_basis()` list bases of e_0 M, e_1 M, ... in order.
  const ExactMatrix& adapted_basis() const;
  const ExactMatrix& adapted_basis_inverse() const;
  /// dim e_i M for each idempotent.
  const std::vector<std::size_t>& block_dims() const;
  /// Action of generator g in adapted coordinates.
  const ExactMatrix& adapted_generator_action(std::size_t g) const;

  /// Throws Error describing the first violated module axiom.
  void validate() const;

  struct Body;

 private:
  friend std::vector<Module> algebra_memo(const Algebra&, const std::string&,
                                          const std::function<std::vector<Module>()>&);
  Module(Algebra algebra, std::shared_ptr<const Body> body) : algebra_(std::move(algebra)), body_(std::move(body)) {}
  Algebra algebra_;
  std::shared_ptr<const Body> body_;
};

/// Throws MismatchError unless both modules live over the same algebra.
void require_same_algebra(const Module& a, const Module& b, const char* where);

/// Lambda as a left module over itself.
Module regular_module(const Algebra& algebra);

/// Socle: {m : r m = 0 for every radical element r}, as columns of a basis.
ExactMatrix socle_basis(const Module& m);
/// Radical J M, as columns of a basis.
ExactMatrix radical_basis(const Module& m);

class ModuleMap {
 public:
  ModuleMap() = default;
  /// Validates the intertwining condition.
  ModuleMap(Module source, Module target, ExactMatrix matrix);
  static ModuleMap trusted(Module source, Module target, ExactMatrix matrix);
  static ModuleMap identity(const Module& m);
  static ModuleMap zero(const Module& source, const Module& target);

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  /// target.dim x source.dim
  const ExactMatrix& matrix() const { return matrix_; }

  std::size_t rank() const;
  bool is_injective() const { return rank() == source_.dim(); }
  bool is_surjective() const { return rank() == target_.dim(); }
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  bool is_zero() const { return matrix_.is_zero(); }

  void validate() const;

 private:
  Module source_;
  Module target_;
  ExactMatrix matrix_;
};

/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap scale(Residue c, const ModuleMap& f);

struct ShortExactSequence {
  ModuleMap f;  // A -> B
  ModuleMap g;  // B -> C

  const Module& left() const { return f.source(); }
  const Module& middle() const { return f.target(); }
  const Module& right() const { return g.target(); }

  /// Empty when valid, otherwise the first violated condition.
  std::optional<std::string> violation() const;
  bool is_valid() const { return !violation().has_value(); }
};

/// F_p-basis of Hom_Lambda(M, N).
std::vector<ModuleMap> hom_basis(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);

struct SubmoduleResult {
  Module module;
  ModuleMap inclusion;
};
struct QuotientResult {
  Module module;
  ModuleMap projection;
};

/// Submodule spanned by the columns of `basis` (which must be linearly
/// independent and invariant under the action).
SubmoduleResult submodule(const Module& m, const ExactMatrix& basis, std::string name = {});
/// Quotient by the invariant subspace spanned by the columns of `basis`.
QuotientResult quotient(const Module& m, const ExactMatrix& basis, std::string name = {});

struct Factorization {
  SubmoduleResult kernel;
  Module image;
  ModuleMap coimage_projection;  // source -> image
  ModuleMap image_inclusion;     // image -> target
  QuotientResult cokernel;
};

Factorization factor(const ModuleMap& f);
SubmoduleResult kernel(const ModuleMap& f);
QuotientResult cokernel(const ModuleMap& f);

struct Biproduct {
  Module sum;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};

/// Empty list gives the zero module.
Biproduct direct_sum(const Algebra& algebra, std::span<const Module> modules, std::string name = {});
Module direct_sum_module(const Algebra& algebra, std::span<const Module> modules, std::string name = {});

/// The map sum_k (f_k after pi_k) from the biproduct of the sources to a common target.
ModuleMap copairing(const Biproduct& sources, std::span<const ModuleMap> maps);
/// The map sum_k (iota_k after f_k) from a common source into the biproduct of the targets.
ModuleMap pairing(const Biproduct& targets, std::span<const ModuleMap> maps);

/// Some X with X after epi == h (epi must be surjective), or nullopt.
std::optional<ModuleMap> factor_through_epi(const ModuleMap& epi, const ModuleMap& h);
/// Some X with mono after X == h (mono must be injective), or nullopt.
std::optional<ModuleMap> factor_through_mono(const ModuleMap& mono, const ModuleMap& h);

struct Pullback {
  Module object;
  ModuleMap to_first;   // P -> A
  ModuleMap to_second;  // P -> B
};
/// Pullback of f: A -> C <- B: g.
Pullback pullback(const ModuleMap& f, const ModuleMap& g);

struct Pushout {
  Module object;
  ModuleMap from_first;   // B -> Q
  ModuleMap from_second;  // C -> Q
};
/// Pushout of f: A -> B and g: A -> C.
Pushout pushout(const ModuleMap& f, const ModuleMap& g);

enum class IsoStatus { isomorphic, not_isomorphic, inconclusive };

struct IsoResult {
  IsoStatus status = IsoStatus::inconclusive;
  std::optional<ModuleMap> isomorphism;  // certificate when isomorphic
  std::string reason;
};

struct IsoOptions {
  /// Enumerate Hom exhaustively when p^{dim Hom} is at most this.
  std::uint64_t exhaustive_budget = 1U << 12;
  /// Random combinations tried before falling back to summand matching.
  std::size_t random_samples = 256;
  std::uint64_t seed = 0x5eed;
};

IsoResult is_isomorphic(const Module& m, const Module& n, const IsoOptions& opts = {});

/// Deterministic test for two modules each known to be indecomposable:
/// they are isomorphic iff some composite g f of basis maps is not nilpotent.
std::optional<ModuleMap> isomorphism_of_indecomposables(const Module& m, const Module& n);

struct SplitOptions {
  std::uint64_t exhaustive_budget = 1U << 12;
  std::size_t random_samples = 96;
  std::uint64_t seed = 0xf177;
};

struct SplitResult {
  std::vector<Module> summands;
  /// inclusions[k]: summand k -> M and projections[k]: M -> summand k, with
  /// sum_k inclusions[k] projections[k] = id_M.
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
  /// True when indecomposability of every summand was proved
  /// (End of dimension 1 or exhaustive search), not just sampled.
  bool certified = true;
};

/// Krull-Schmidt splitting via Fitting decompositions of endomorphisms.
SplitResult split_indecomposables(const Module& m, const SplitOptions& opts = {});

/// Exhaustive/proved check for a nontrivial idempotent-type endomorphism.
/// Returns nullopt when End is too large to enumerate within budget.
std::optional<bool> is_indecomposable_exhaustive(const Module& m, std::uint64_t budget = 1U << 14);

/// Multiplicities m_i with M = (+) catalog[i]^{m_i}; throws DecompositionError.
std::vector<std::size_t> decompose(const Module& m, std::span<const Module> catalog);

/// As decompose, with a precomputed matrix hom_dims[j][i] = dim Hom(catalog[j], catalog[i]).
std::vector<std::size_t> decompose_with(const Module& m, std::span<const Module> catalog,
                                        const std::vector<std::vector<std::size_t>>& hom_dims,
                                        bool catalog_complete);

}  // namespace cotri
