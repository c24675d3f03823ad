#include "cotri/catalog.hpp"

#include <algorithm>
#include <numeric>

#include "cotri/error.hpp"
#include "cotri/homology.hpp"

namespace cotri {

std::shared_ptr<const Catalog> Catalog::make(Algebra algebra, std::vector<Module> modules, bool complete,
                                             std::string name) {
  std::shared_ptr<Catalog> c(new Catalog());
  for (const auto& m : modules)
    if (!(m.algebra() == algebra)) throw MismatchError("Catalog: module " + m.name() + " lives over another algebra");
  c->algebra_ = std::move(algebra);
  c->modules_ = std::move(modules);
  c->complete_ = complete;
  c->name_ = std::move(name);
  const std::size_t n = c->modules_.size();
  c->hom_dims_.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) c->hom_dims_[j][i] = hom_dim(c->modules_[j], c->modules_[i]);
  return c;
}

std::size_t Catalog::ext_dim(std::size_t n, std::size_t i, std::size_t j) const {
  const auto key = std::make_tuple(n, i, j);
  {
    std::lock_guard lock(mutex_);
    auto it = ext_cache_.find(key);
    if (it != ext_cache_.end()) return it->second;
  }
  const std::size_t v = cotri::ext_dim(n, modules_.at(i), modules_.at(j));
  std::lock_guard lock(mutex_);
  ext_cache_[key] = v;
  return v;
}

std::vector<std::size_t> Catalog::decompose(const Module& m) const {
  {
    std::lock_guard lock(mutex_);
    auto it = decompositions_.find(m.id());
    if (it != decompositions_.end()) return it->second;
  }
  auto mult = decompose_with(m, modules_, hom_dims_, complete_);
  std::lock_guard lock(mutex_);
  decompositions_[m.id()] = mult;
  return mult;
}

std::optional<std::size_t> Catalog::index_of(const Module& m) const {
  const auto mult = decompose(m);
  if (std::accumulate(mult.begin(), mult.end(), std::size_t{0}) != 1) return std::nullopt;
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i] == 1) return i;
  return std::nullopt;
}

namespace {

std::vector<std::size_t> indices_of_summands(const Catalog& c, const std::vector<Module>& ms) {
  std::vector<std::size_t> out;
  for (const auto& m : ms) {
    const auto mult = c.decompose(m);
    for (std::size_t i = 0; i < mult.size(); ++i)
      if (mult[i]) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

const std::vector<std::size_t>& Catalog::projective_indices() const {
  std::call_once(proj_once_, [this] { proj_ = indices_of_summands(*this, indecomposable_projectives(algebra_)); });
  return proj_;
}

const std::vector<std::size_t>& Catalog::injective_indices() const {
  std::call_once(inj_once_, [this] { inj_ = indices_of_summands(*this, indecomposable_injectives(algebra_)); });
  return inj_;
}

std::string Catalog::label(std::size_t i) const {
  const auto& n = modules_.at(i).name();
  return n.empty() ? "#" + std::to_string(i) : n;
}

ObjectClass::ObjectClass(CatalogPtr catalog, std::vector<std::size_t> members, std::string name)
    : catalog_(std::move(catalog)), members_(std::move(members)), name_(std::move(name)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto i : members_)
    if (i >= catalog_->size()) throw Error("ObjectClass: member index outside the catalog");
}

ObjectClass ObjectClass::all(CatalogPtr catalog) {
  std::vector<std::size_t> m(catalog->size());
  std::iota(m.begin(), m.end(), 0);
  return ObjectClass(std::move(catalog), std::move(m), "mod");
}

ObjectClass ObjectClass::projectives(CatalogPtr catalog) {
  auto m = catalog->projective_indices();
  return ObjectClass(std::move(catalog), std::move(m), "Proj");
}

ObjectClass ObjectClass::injectives(CatalogPtr catalog) {
  auto m = catalog->injective_indices();
  return ObjectClass(std::move(catalog), std::move(m), "Inj");
}

ObjectClass ObjectClass::generated_by(CatalogPtr catalog, const std::vector<Module>& generators, std::string name) {
  auto m = indices_of_summands(*catalog, generators);
  return ObjectClass(std::move(catalog), std::move(m), std::move(name));
}

ObjectClass ObjectClass::from_predicate(CatalogPtr catalog, std::string name,
                                        std::function<bool(const Module&)> predicate) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < catalog->size(); ++i)
    if (predicate(catalog->module(i))) m.push_back(i);
  ObjectClass c(std::move(catalog), std::move(m), std::move(name));
  c.predicate_ = std::make_shared<const std::function<bool(const Module&)>>(std::move(predicate));
  return c;
}

std::vector<Module> ObjectClass::generators() const {
  std::vector<Module> out;
  for (auto i : members_) out.push_back(catalog_->module(i));
  return out;
}

ObjectClass ObjectClass::renamed(std::string name) const {
  ObjectClass c(catalog_, members_, std::move(name));
  c.predicate_ = predicate_;
  return c;
}

bool ObjectClass::contains_index(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

std::optional<std::size_t> ObjectClass::first_outsider(const Module& m) const {
  const auto mult = catalog_->decompose(m);
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i] && !contains_index(i)) return i;
  return std::nullopt;
}

bool ObjectClass::contains(const Module& m) const {
  if (predicate_) return (*predicate_)(m);
  return !first_outsider(m).has_value();
}

bool ObjectClass::subset_of(const ObjectClass& o) const {
  require_same_catalog(*this, o, "subset_of");
  return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
}

ObjectClass ObjectClass::intersect(const ObjectClass& o, std::string name) const {
  require_same_catalog(*this, o, "intersect");
  std::vector<std::size_t> out;
  std::set_intersection(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(),
                        std::back_inserter(out));
  if (name.empty()) name = name_ + "&" + o.name_;
  return ObjectClass(catalog_, std::move(out), std::move(name));
}

std::vector<std::size_t> ObjectClass::minus(const ObjectClass& o) const {
  require_same_catalog(*this, o, "minus");
  std::vector<std::size_t> out;
  std::set_difference(members_.begin(), members_.end(), o.members_.begin(), o.members_.end(), std::back_inserter(out));
  return out;
}

std::string ObjectClass::describe() const {
  std::string s = name_ + " = add{";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) s += ", ";
    s += catalog_->label(members_[k]);
  }
  return s + "}";
}

std::string ObjectClass::member_expression() const {
  std::string s = "add{";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) s += ",";
    s += catalog_->label(members_[k]);
  }
  return s + "}";
}

std::optional<ObjectClass> parse_member_expression(const CatalogPtr& catalog, const std::string& expr) {
  if (expr.size() < 5 || expr.compare(0, 4, "add{") != 0 || expr.back() != '}') return std::nullopt;
  std::vector<std::size_t> members;
  std::string item;
  auto flush = [&]() -> bool {
    if (item.empty()) return true;
    for (std::size_t i = 0; i < catalog->size(); ++i)
      if (catalog->label(i) == item) {
        members.push_back(i);
        item.clear();
        return true;
      }
    return false;
  };
  for (std::size_t i = 4; i + 1 < expr.size(); ++i) {
    if (expr[i] == ',') {
      if (!flush()) return std::nullopt;
    } else {
      item += expr[i];
    }
  }
  if (!flush()) return std::nullopt;
  return ObjectClass(catalog, std::move(members), expr);
}

void require_same_catalog(const ObjectClass& a, const ObjectClass& b, const char* where) {
  if (a.catalog() != b.catalog()) throw MismatchError(std::string(where) + ": classes are over different catalogs");
}

}  // namespace cotri
