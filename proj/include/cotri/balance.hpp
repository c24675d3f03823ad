#pragma once

// Balanced pairs (F, L): the criterion via doubly Hom-acyclic approximation
// sequences, admissibility, and the statements linking balanced pairs with
// complete hereditary cotorsion triplets.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cotri/catalog.hpp"
#include "cotri/cotorsion.hpp"
#include "cotri/report.hpp"

namespace cotri {

struct BalanceEntry {
  std::size_t index = 0;  // catalog index of M
  /// K -> F -> M from an F-precover of M.
  ModuleMap k_to_f, f_to_m;
  /// M -> L -> C from an L-preenvelope of M.
  ModuleMap m_to_l, l_to_c;
  std::string method;  // "canonical" or "alternate"
};

struct BalanceCounterexample {
  std::size_t index = 0;  // catalog index of M
  std::string side;       // "left" (F-precover sequence) or "right" (L-preenvelope sequence)
  std::string reason;     // "acyclicity" or "exactness"
  std::optional<std::size_t> generator;
  std::optional<std::size_t> position;
  Variance variance = Variance::covariant;
  std::vector<ModuleMap> sequence;
};

struct BalanceCertificate {
  bool verdict = false;
  std::vector<BalanceEntry> entries;
  std::vector<BalanceCounterexample> counterexamples;
  CheckReport report;
};

/// Criterion (c): for every catalog M an F-precover sequence K -> F -> M and an
/// L-preenvelope sequence M -> L -> C that are Hom(F, -)- and Hom(-, L)-acyclic.
/// Stops at the first catalog module without such sequences.
BalanceCertificate check_balanced(const ObjectClass& f, const ObjectClass& l, const CheckOptions& opts = {});

struct AdmissibleReport {
  bool verdict = false;
  CheckReport report;
};

/// Canonical precovers are epimorphisms and canonical preenvelopes monomorphisms.
AdmissibleReport check_admissible(const ObjectClass& f, const ObjectClass& l, const CheckOptions& opts = {});

/// F n G = Proj and H n L = Inj, given cotorsion pairs (F, H), (G, L) and (F, L) balanced.
/// When a precondition fails the report names it in failed_hypothesis.
CheckReport check_intersections(const ObjectClass& f, const ObjectClass& h, const ObjectClass& g,
                                const ObjectClass& l, const CheckOptions& opts = {});

/// Smd(F1) = Smd(F2) for admissible balanced pairs (F1, L) and (F2, L).
CheckReport check_smd_uniqueness(const ObjectClass& f1, const ObjectClass& f2, const ObjectClass& l,
                                 const CheckOptions& opts = {});

struct TripletBalance {
  TripletReport triplet;
  BalanceCertificate balance;
  AdmissibleReport admissible;
  bool verdict() const { return balance.verdict && admissible.verdict; }
};

/// Throws PreconditionError unless (F, G, L) is a complete hereditary cotorsion triplet.
TripletBalance triplet_implies_balance(const ObjectClass& f, const ObjectClass& g, const ObjectClass& l,
                                       const CheckOptions& opts = {});

struct BalanceToTriplet {
  /// Status of hypotheses (1), (2), (3).
  bool hypothesis[3] = {false, false, false};
  std::optional<int> failed_hypothesis;
  std::optional<ObjectClass> h;  // F^perp
  std::optional<ObjectClass> g;  // ^perp L
  bool h_equals_g = false;
  bool f_cap_h_is_proj = false;  // F n F^perp = Proj
  bool g_cap_l_is_inj = false;   // ^perp L n L = Inj
  bool triplet_verified = false;
  CheckReport report;

  bool verdict() const {
    return !failed_hypothesis && h_equals_g && f_cap_h_is_proj && g_cap_l_is_inj && triplet_verified;
  }
};

BalanceToTriplet balance_to_triplet(const ObjectClass& f, const ObjectClass& l, const CheckOptions& opts = {});

struct EquivalenceReport {
  bool preconditions = false;
  bool h_equals_g = false;
  bool balanced = false;
  bool agree() const { return h_equals_g == balanced; }
  BalanceCertificate balance;
  CheckReport report;
};

/// H = G iff (F, L) is balanced, for complete hereditary (F, H), (G, L) with
/// F n H in G and G n L in H. Both sides are evaluated even when a
/// precondition fails; report.failed_hypothesis then names it.
EquivalenceReport check_equivalence_corollary(const ObjectClass& f, const ObjectClass& h, const ObjectClass& g,
                                              const ObjectClass& l, const CheckOptions& opts = {});

}  // namespace cotri
