#pragma once

// Ext-orthogonal classes, cotorsion pairs and triplets: the pair equalities,
// completeness (special approximation sequences), heredity, (co)resolving
// closure, Salce's construction and the projective objects produced by a
// complete hereditary triplet.
//
// Quantifiers over all modules are reduced to the indecomposables of the
// classes' catalog. Over a catalog not declared complete the reports are
// marked "evidence".

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/catalog.hpp"
#include "cotri/report.hpp"

namespace cotri {

struct CheckOptions {
  /// Largest n for which Ext^n is computed when no closure certificate exists.
  std::size_t ext_bound = 6;
  /// Reading of "left/right exact" used by the balance checks.
  bool strict_exactness = false;
  /// Largest multiplicity of a generator in searched alternatives.
  std::size_t multiplicity_bound = 2;
  /// Maps tried per bounded search (exhaustive below this size, sampled above).
  std::uint64_t search_budget = 1U << 12;
  std::uint64_t seed = 1;
};

enum class Side { left, right };

/// left: ^{perp_1}X = {U : Ext^1(U, X) = 0}; right: X^{perp_1}.
ObjectClass perp1(const ObjectClass& x, Side side, std::string name = {});
/// Same with Ext^i for every i > 0; modules whose vanishing is only verified
/// up to the bound are included and listed in `unproved` when given.
ObjectClass perp_all(const ObjectClass& x, Side side, std::size_t bound, std::string name = {},
                     std::vector<std::size_t>* unproved = nullptr);

struct PairFailure {
  /// "ext": Ext^n(first, second) = dim != 0 with first in Y and second in X.
  /// "missing": first lies in the orthogonal but not in the class `side` names.
  /// "approximation": no special sequence was found for catalog module first.
  std::string kind;
  std::size_t first = 0;
  std::optional<std::size_t> second;
  std::size_t n = 1;
  std::size_t dim = 0;
  std::string detail;
};

struct ApproximationWitness {
  /// 0 -> X -> Y -> C -> 0 with Y in the left class and X in the right class.
  ShortExactSequence precover;
  /// 0 -> C -> X' -> Y' -> 0 with X' in the right class and Y' in the left class.
  ShortExactSequence preenvelope;
  std::string precover_method;
  std::string preenvelope_method;
};

struct PairReport {
  bool verdict = false;
  std::vector<PairFailure> failures;
  /// Completeness witnesses by catalog index.
  std::map<std::size_t, ApproximationWitness> witnesses;
  CheckReport report;
};

PairReport check_cotorsion_pair(const ObjectClass& y, const ObjectClass& x);
PairReport check_complete(const ObjectClass& y, const ObjectClass& x, const CheckOptions& opts = {});
/// report.certificate is "proved" or "verified to bound N".
PairReport check_hereditary(const ObjectClass& y, const ObjectClass& x, const CheckOptions& opts = {});
PairReport check_resolving(const ObjectClass& y, const CheckOptions& opts = {});
PairReport check_coresolving(const ObjectClass& x, const CheckOptions& opts = {});

enum class Direction { precover, preenvelope };

struct SalceResult {
  std::optional<ShortExactSequence> sequence;
  std::string failure;
};

/// precover: 0 -> X -> Y -> M -> 0 from the projective cover of M, a special
/// X-preenvelope of its kernel and a pushout. preenvelope: 0 -> M -> X -> Y -> 0
/// from the injective envelope, a special Y-precover of the cokernel and a pullback.
SalceResult salce_construction(const ObjectClass& y, const ObjectClass& x, const Module& m, Direction direction);

/// Special sequences found by the search order canonical -> Salce -> bounded search.
std::optional<ShortExactSequence> special_precover_sequence(const ObjectClass& y, const ObjectClass& x,
                                                            const Module& c, const CheckOptions& opts = {},
                                                            std::string* method = nullptr);
std::optional<ShortExactSequence> special_preenvelope_sequence(const ObjectClass& y, const ObjectClass& x,
                                                               const Module& c, const CheckOptions& opts = {},
                                                               std::string* method = nullptr);

/// 0 -> X -> Y -> C -> 0 is special for (Y, X): exact, Y in y, X in x.
bool is_special_precover_sequence(const ObjectClass& y, const ObjectClass& x, const ShortExactSequence& s);
/// 0 -> C -> X -> Y -> 0 is special for (Y, X).
bool is_special_preenvelope_sequence(const ObjectClass& y, const ObjectClass& x, const ShortExactSequence& s);

struct TripletReport {
  bool is_triplet = false;  // both pairs are cotorsion pairs
  bool complete = false;
  bool hereditary = false;
  bool hereditary_proved = false;
  PairReport left_pair, left_complete, left_hereditary;
  PairReport right_pair, right_complete, right_hereditary;
  CheckReport report;

  bool verdict() const { return is_triplet && complete && hereditary; }
};

TripletReport check_triplet(const ObjectClass& f, const ObjectClass& g, const ObjectClass& l,
                            const CheckOptions& opts = {});

struct ProjectiveConstruction {
  /// 0 -> L -> G -> C -> 0, special for (G, L).
  ShortExactSequence gl_sequence;
  /// 0 -> G' -> F -> G -> 0, special for (F, G).
  ShortExactSequence fg_sequence;
  /// 0 -> K -> F -> C -> 0 with K the pullback of L -> G <- F.
  ShortExactSequence sequence;
  bool middle_in_f = false;
  bool middle_in_g = false;
  bool middle_projective = false;
  Witness witness;
};

/// Throws PreconditionError when a special sequence cannot be produced.
ProjectiveConstruction projectives_from_triplet(const ObjectClass& f, const ObjectClass& g, const ObjectClass& l,
                                                const Module& c, const CheckOptions& opts = {});

bool is_projective_module(const Module& m);
bool is_injective_module(const Module& m);

/// Resolves class names of the given classes (matched together with the
/// module's algebra name) plus the keywords mod, Proj and Inj.
ClassResolver class_resolver(const std::vector<ObjectClass>& classes);

}  // namespace cotri
