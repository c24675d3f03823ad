#pragma once

// A universe of pairwise non-isomorphic indecomposable modules and the object
// classes presented as additive closures of subsets of it.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cotri/algebra.hpp"

namespace cotri {

class Catalog {
 public:
  /// `complete` declares that every indecomposable module is isomorphic to a member
  /// (exact mode); otherwise results are evidence on the listed universe.
  static std::shared_ptr<const Catalog> make(Algebra algebra, std::vector<Module> modules, bool complete,
                                             std::string name = {});

  const Algebra& algebra() const { return algebra_; }
  const std::vector<Module>& modules() const { return modules_; }
  const Module& module(std::size_t i) const { return modules_.at(i); }
  std::size_t size() const { return modules_.size(); }
  bool complete() const { return complete_; }
  const std::string& name() const { return name_; }

  /// dims[j][i] = dim Hom(X_j, X_i)
  const std::vector<std::vector<std::size_t>>& hom_dims() const { return hom_dims_; }
  std::size_t ext_dim(std::size_t n, std::size_t i, std::size_t j) const;

  /// Multiplicities over the universe; throws DecompositionError.
  std::vector<std::size_t> decompose(const Module& m) const;
  /// Universe index of an indecomposable module.
  std::optional<std::size_t> index_of(const Module& m) const;

  /// Universe indices of the indecomposable projectives / injectives.
  const std::vector<std::size_t>& projective_indices() const;
  const std::vector<std::size_t>& injective_indices() const;

  std::string label(std::size_t i) const;

 private:
  Catalog() = default;
  Algebra algebra_;
  std::vector<Module> modules_;
  bool complete_ = true;
  std::string name_;
  std::vector<std::vector<std::size_t>> hom_dims_;

  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, std::vector<std::size_t>> decompositions_;
  mutable std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> ext_cache_;
  mutable std::once_flag proj_once_, inj_once_;
  mutable std::vector<std::size_t> proj_, inj_;
};

using CatalogPtr = std::shared_ptr<const Catalog>;

/// add(X) for a subset X of a catalog: closed under finite sums and summands.
class ObjectClass {
 public:
  ObjectClass() = default;
  ObjectClass(CatalogPtr catalog, std::vector<std::size_t> members, std::string name);

  static ObjectClass all(CatalogPtr catalog);
  static ObjectClass projectives(CatalogPtr catalog);
  static ObjectClass injectives(CatalogPtr catalog);
  /// Additive closure of the given modules (each is decomposed over the catalog).
  static ObjectClass generated_by(CatalogPtr catalog, const std::vector<Module>& generators, std::string name);
  /// A class given by an additive membership predicate; `members` are the universe
  /// indices satisfying it. Membership of other modules asks the predicate directly.
  static ObjectClass from_predicate(CatalogPtr catalog, std::string name,
                                    std::function<bool(const Module&)> predicate);

  const CatalogPtr& catalog() const { return catalog_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::vector<Module> generators() const;
  const std::string& name() const { return name_; }
  ObjectClass renamed(std::string name) const;

  bool contains_index(std::size_t i) const;
  bool contains(const Module& m) const;
  /// First universe index of a summand of m outside the class, if any.
  std::optional<std::size_t> first_outsider(const Module& m) const;

  bool same_members(const ObjectClass& o) const { return members_ == o.members_; }
  bool subset_of(const ObjectClass& o) const;
  ObjectClass intersect(const ObjectClass& o, std::string name = {}) const;
  /// Members of this class that are not in o.
  std::vector<std::size_t> minus(const ObjectClass& o) const;

  std::string describe() const;
  /// "add{A,B}": a name that class_resolver can interpret without a registry.
  std::string member_expression() const;
  bool has_predicate() const { return static_cast<bool>(predicate_); }

 private:
  CatalogPtr catalog_;
  std::vector<std::size_t> members_;
  std::string name_;
  std::shared_ptr<const std::function<bool(const Module&)>> predicate_;
};

void require_same_catalog(const ObjectClass& a, const ObjectClass& b, const char* where);

/// Parses "add{A,B}" against catalog labels; nullopt when it is not such an expression.
std::optional<ObjectClass> parse_member_expression(const CatalogPtr& catalog, const std::string& expr);

}  // namespace cotri
