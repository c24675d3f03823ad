#pragma once

// Check reports and replayable witnesses.
//
// A witness is a small bundle of modules and maps together with claims about
// them. Every claim can be re-evaluated independently of the check that
// produced it, both in memory and after a round trip through the text format.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/homology.hpp"

namespace cotri {

enum class ClaimKind {
  short_exact,     // maps f, g
  left_exact,      // maps f, g; flag = strict
  right_exact,     // maps f, g; flag = strict
  complex,         // maps ...
  commutes,        // maps a, b, c, d: b a == d c
  member,          // module, class
  nonmember,       // module, class
  dim,             // module, value
  hom_dim,         // modules A, B, value
  ext_dim,         // modules A, B; value = n, extra = dimension
  acyclic,         // maps ..., then module T as the last arg; flag = contravariant
  not_acyclic,     // as acyclic; value = failing position
  isomorphic,      // modules A, B
  not_isomorphic,  // modules A, B
  injective,       // map
  not_injective,   // map
  surjective,      // map
  not_surjective,  // map
};

std::string to_string(ClaimKind k);
std::optional<ClaimKind> claim_kind_from_string(const std::string& s);

struct Claim {
  ClaimKind kind = ClaimKind::dim;
  std::vector<std::size_t> args;
  std::string class_expr;
  std::size_t value = 0;
  std::size_t extra = 0;
  bool flag = false;
};

struct Witness {
  std::string label;
  std::vector<Module> modules;
  std::vector<ModuleMap> maps;
  /// maps[k] joins modules[map_ends[k].first] -> modules[map_ends[k].second]
  std::vector<std::pair<std::size_t, std::size_t>> map_ends;
  std::vector<Claim> claims;

  std::size_t add_module(const Module& m);
  std::size_t add_map(const ModuleMap& f);

  void claim_short_exact(const ShortExactSequence& s);
  void claim_left_exact(const ModuleMap& f, const ModuleMap& g, bool strict);
  void claim_right_exact(const ModuleMap& f, const ModuleMap& g, bool strict);
  void claim_member(const Module& m, const std::string& cls, bool member = true);
  void claim_dim(const Module& m, std::size_t d);
  void claim_hom_dim(const Module& a, const Module& b, std::size_t d);
  void claim_ext_dim(std::size_t n, const Module& a, const Module& b, std::size_t d);
  void claim_acyclic(const std::vector<ModuleMap>& maps, const Module& t, Variance v);
  void claim_not_acyclic(const std::vector<ModuleMap>& maps, const Module& t, Variance v, std::size_t position);
  void claim_isomorphic(const Module& a, const Module& b, bool iso = true);
  void claim_injective(const ModuleMap& f, bool value = true);
  void claim_surjective(const ModuleMap& f, bool value = true);
  void claim_commutes(const ModuleMap& a, const ModuleMap& b, const ModuleMap& c, const ModuleMap& d);
};

/// Decides membership of a module in a named class; nullopt when the name is unknown.
using ClassResolver = std::function<std::optional<bool>(const std::string& cls, const Module& m)>;
/// Returns the algebra registered under a name (for parsing witnesses).
using AlgebraResolver = std::function<std::optional<Algebra>(const std::string& name)>;

/// nullopt when every claim holds, otherwise a description of the first failing claim.
std::optional<std::string> verify_witness(const Witness& w, const ClassResolver& classes);

struct CheckReport {
  std::string name;
  bool verdict = false;
  /// "exact" when the universe is a declared-complete catalog, "evidence" otherwise.
  std::string mode = "exact";
  /// "proved", "verified to bound N", or empty.
  std::string certificate;
  std::optional<std::string> failed_hypothesis;
  std::vector<std::string> notes;
  std::vector<Witness> witnesses;
  std::vector<Witness> counterexamples;
  std::vector<CheckReport> parts;

  void add_part(CheckReport part) { parts.push_back(std::move(part)); }
  void note(std::string s) { notes.push_back(std::move(s)); }
  /// Total number of witnesses and counterexamples in this report and its parts.
  std::size_t witness_count() const;
};

/// Replays every witness/counterexample in the report tree; returns the failures.
std::vector<std::string> replay_report(const CheckReport& r, const ClassResolver& classes);

void write_witness(std::ostream& out, const Witness& w, const std::string& indent = "");
/// Parses one witness block (the line "witness ..." already consumed into `header`).
Witness read_witness(std::istream& in, const std::string& header, const AlgebraResolver& algebras);

void write_report(std::ostream& out, const CheckReport& r, const std::string& indent = "");

std::string matrix_to_text(const ExactMatrix& m);
ExactMatrix matrix_from_text(const std::string& s, std::uint32_t p);

}  // namespace cotri
