#include "cotri/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

#include "cotri/error.hpp"

namespace cotri {

namespace {

std::atomic<std::uint64_t> next_module_id{1};

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
  }
};

constexpr std::size_t kHomCacheLimit = 1U << 16;

// Rows of `b` (n x k, independent columns) forming an invertible k x k block,
// together with the inverse of that block: x = inv * (B v)[rows] recovers
// coordinates of any vector in the column span.
struct LeftInverse {
  std::vector<std::size_t> rows;
  ExactMatrix inv;
};

LeftInverse left_inverse(const ExactMatrix& b) {
  LeftInverse li;
  const RowEchelon e = rref(b.transpose());
  if (e.rank != b.cols()) throw Error("left_inverse: columns are linearly dependent");
  li.rows = e.pivot_cols;
  ExactMatrix sq(b.cols(), b.cols(), b.field_char());
  for (std::size_t i = 0; i < li.rows.size(); ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) sq.set(i, c, b.at(li.rows[i], c));
  li.inv = *inverse(sq);
  return li;
}

ExactMatrix select_rows(const ExactMatrix& m, std::span<const std::size_t> rows) {
  ExactMatrix out(rows.size(), m.cols(), m.field_char());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(i, c, m.at(rows[i], c));
  return out;
}

ExactMatrix coordinates(const LeftInverse& li, const ExactMatrix& vectors) {
  return li.inv * select_rows(vectors, li.rows);
}

std::vector<Vec> reduce_span(std::uint32_t p, std::size_t dim, const std::vector<Vec>& vs) {
  if (vs.empty()) return {};
  ExactMatrix m(vs.size(), dim, p);
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c) m.set(r, c, vs[r][c]);
  const RowEchelon e = rref(m);
  std::vector<Vec> out;
  for (std::size_t r = 0; r < e.rank; ++r) {
    auto row = e.reduced.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, std::uint32_t p) {
  if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) return true;
  if (basis.empty()) return false;
  return solve(ExactMatrix::from_columns(p, v.size(), basis), v).has_value();
}

}  // namespace

struct Algebra::Impl {
  Spec spec;
  std::size_t dim = 0;
  std::vector<ExactMatrix> left_mult;

  mutable std::mutex cache_mutex;
  mutable std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::vector<ExactMatrix>, PairHash> hom_cache;
  mutable std::map<std::string, std::vector<std::shared_ptr<const Module::Body>>> memo;
  mutable std::once_flag opposite_once;
  mutable std::shared_ptr<const Impl> opposite;
};

struct Module::Body {
  std::size_t dim = 0;
  std::vector<ExactMatrix> actions;
  std::string name;
  std::uint64_t id = 0;

  mutable std::once_flag adapted_once;
  mutable ExactMatrix adapted;
  mutable ExactMatrix adapted_inv;
  mutable std::vector<std::size_t> block_dims;
  mutable std::vector<ExactMatrix> generator_actions;
};

namespace {

std::shared_ptr<Algebra::Impl> build_impl(Algebra::Spec spec, bool validate) {
  auto impl = std::make_shared<Algebra::Impl>();
  const std::uint32_t p = spec.p;
  if (!is_prime(p) || p >= (1U << 31)) throw Error("Algebra: characteristic " + std::to_string(p) + " is not a prime below 2^31");
  const std::size_t d = spec.unit.size();
  if (spec.constants.size() != d * d * d) throw Error("Algebra: structure constants must have dim^3 entries");
  if (spec.labels.empty())
    for (std::size_t i = 0; i < d; ++i) spec.labels.push_back("b" + std::to_string(i));
  if (spec.labels.size() != d) throw Error("Algebra: label count differs from dimension");
  for (auto& c : spec.constants) c %= p;
  for (auto& u : spec.unit) u %= p;
  auto check_vec = [&](const Vec& v, const char* what) {
    if (v.size() != d) throw Error(std::string("Algebra: ") + what + " has wrong length");
  };
  if (spec.idempotents.empty()) spec.idempotents.push_back(spec.unit);
  for (auto& e : spec.idempotents) check_vec(e, "idempotent");
  for (auto& r : spec.radical) check_vec(r, "radical element");
  if (spec.generators.empty())
    for (std::size_t i = 0; i < d; ++i) {
      Vec v(d, 0);
      v[i] = 1;
      spec.generators.push_back(v);
    }
  for (auto& g : spec.generators) check_vec(g, "generator");
  spec.radical = reduce_span(p, d, spec.radical);
  impl->dim = d;
  impl->left_mult.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    ExactMatrix m(d, d, p);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) m.set(k, j, spec.constants[(i * d + j) * d + k]);
    impl->left_mult.push_back(std::move(m));
  }
  impl->spec = std::move(spec);
  if (!validate) return impl;

  const Algebra::Spec& s = impl->spec;
  const PrimeField f{p};
  auto mul = [&](const Vec& a, const Vec& b) {
    Vec out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (!b[j]) continue;
        const Residue ab = f.mul(a[i], b[j]);
        const Residue* c = &s.constants[(i * d + j) * d];
        for (std::size_t k = 0; k < d; ++k)
          if (c[k]) out[k] = f.add(out[k], f.mul(ab, c[k]));
      }
    }
    return out;
  };
  auto basis = [&](std::size_t i) {
    Vec v(d, 0);
    v[i] = 1;
    return v;
  };
  // associativity on basis triples: L_{b_i b_j} = L_i L_j
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ExactMatrix lhs(d, d, p);
      const Residue* c = &s.constants[(i * d + j) * d];
      for (std::size_t k = 0; k < d; ++k)
        if (c[k]) lhs.add_scaled(c[k], impl->left_mult[k]);
      if (!(lhs == impl->left_mult[i] * impl->left_mult[j]))
        throw Error("Algebra: multiplication is not associative (basis elements " + s.labels[i] + ", " +
                    s.labels[j] + ")");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (mul(s.unit, basis(i)) != basis(i) || mul(basis(i), s.unit) != basis(i))
      throw Error("Algebra: unit is not a two-sided identity on " + s.labels[i]);
  }
  Vec total(d, 0);
  for (std::size_t a = 0; a < s.idempotents.size(); ++a) {
    for (std::size_t b = 0; b < s.idempotents.size(); ++b) {
      const Vec prod = mul(s.idempotents[a], s.idempotents[b]);
      const Vec expect = a == b ? s.idempotents[a] : Vec(d, 0);
      if (prod != expect) throw Error("Algebra: idempotents are not orthogonal idempotents");
    }
    for (std::size_t k = 0; k < d; ++k) total[k] = f.add(total[k], s.idempotents[a][k]);
  }
  if (total != s.unit) throw Error("Algebra: idempotents do not sum to the unit");
  // the radical must be a nilpotent two-sided ideal
  for (const auto& r : s.radical)
    for (std::size_t i = 0; i < d; ++i)
      if (!in_span(s.radical, mul(basis(i), r), p) || !in_span(s.radical, mul(r, basis(i)), p))
        throw Error("Algebra: radical span is not a two-sided ideal");
  std::vector<Vec> power = s.radical;
  for (std::size_t step = 0; !power.empty(); ++step) {
    if (step > d) throw Error("Algebra: radical is not nilpotent");
    std::vector<Vec> next;
    for (const auto& r : s.radical)
      for (const auto& x : power) next.push_back(mul(r, x));
    next = reduce_span(p, d, next);
    if (next.size() == power.size()) throw Error("Algebra: radical is not nilpotent");
    power = std::move(next);
  }
  return impl;
}

}  // namespace

Algebra::Algebra(Spec spec) : impl_(build_impl(std::move(spec), true)) {}

std::uint32_t Algebra::field_char() const { return impl_->spec.p; }
std::size_t Algebra::dim() const { return impl_->dim; }
const std::string& Algebra::name() const { return impl_->spec.name; }
const std::vector<std::string>& Algebra::labels() const { return impl_->spec.labels; }
Residue Algebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
  return impl_->spec.constants[(i * impl_->dim + j) * impl_->dim + k];
}
const Vec& Algebra::unit() const { return impl_->spec.unit; }
const std::vector<Vec>& Algebra::idempotents() const { return impl_->spec.idempotents; }
const std::vector<Vec>& Algebra::radical() const { return impl_->spec.radical; }
const std::vector<Vec>& Algebra::generators() const { return impl_->spec.generators; }

Vec Algebra::multiply(const Vec& a, const Vec& b) const {
  const std::size_t d = impl_->dim;
  if (a.size() != d || b.size() != d) throw Error("Algebra::multiply: wrong vector length");
  Vec out(d, 0);
  const PrimeField f{field_char()};
  for (std::size_t i = 0; i < d; ++i) {
    if (!a[i]) continue;
    const Vec col = impl_->left_mult[i].apply(b);
    for (std::size_t k = 0; k < d; ++k) out[k] = f.add(out[k], f.mul(a[i], col[k]));
  }
  return out;
}

Vec Algebra::basis_vector(std::size_t i) const {
  Vec v(impl_->dim, 0);
  v.at(i) = 1;
  return v;
}

Algebra Algebra::opposite() const {
  std::call_once(impl_->opposite_once, [this] {
    Spec s = impl_->spec;
    const std::size_t d = impl_->dim;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) s.constants[(i * d + j) * d + k] = impl_->spec.constants[(j * d + i) * d + k];
    s.name = impl_->spec.name + "^op";
    impl_->opposite = build_impl(std::move(s), false);
  });
  return Algebra(impl_->opposite);
}

Algebra make_path_algebra(const Quiver& q, const std::vector<PathRelation>& relations, std::uint32_t p,
                          std::size_t max_length, std::string name) {
  if (!is_prime(p)) throw Error("make_path_algebra: characteristic is not prime");
  // relations as (length, source, target, [(coef, path)])
  struct Rel {
    std::size_t length;
    std::vector<std::pair<Residue, Path>> terms;
  };
  const PrimeField f{p};
  std::vector<Rel> rels;
  for (const auto& r : relations) {
    Rel rel{0, {}};
    bool first = true;
    for (const auto& t : r) {
      Path path;
      if (t.arrows.empty()) throw PreconditionError("make_path_algebra: relation term is a trivial path");
      for (std::size_t k = 0; k < t.arrows.size(); ++k) {
        auto a = q.arrow_index(t.arrows[k]);
        if (!a) throw Error("make_path_algebra: unknown arrow '" + t.arrows[k] + "'");
        const Arrow& arr = q.arrows()[*a];
        if (k == 0) path.source = arr.source;
        else if (q.arrows()[path.arrows.back()].target != arr.source)
          throw Error("make_path_algebra: relation term is not a path");
        path.arrows.push_back(*a);
        path.target = arr.target;
      }
      if (path.length() < 2) throw PreconditionError("make_path_algebra: relation terms must have length >= 2");
      if (first) {
        rel.length = path.length();
        first = false;
      } else {
        if (path.length() != rel.length)
          throw PreconditionError("make_path_algebra: only homogeneous relations are supported");
        if (path.source != rel.terms.front().second.source || path.target != rel.terms.front().second.target)
          throw PreconditionError("make_path_algebra: relation terms are not parallel paths");
      }
      rel.terms.emplace_back(f.reduce(t.coefficient), std::move(path));
    }
    if (!rel.terms.empty()) rels.push_back(std::move(rel));
  }

  // graded pieces of kQ and of the ideal, degree by degree
  std::vector<std::vector<Path>> by_len;
  std::vector<std::map<Path, std::size_t>> index;
  std::vector<RowEchelon> ideal;
  std::size_t nil = 0;
  bool found = false;
  {
    const auto all = paths_up_to(q, max_length);
    if (all.size() > 20000) throw BudgetError("make_path_algebra: too many paths to enumerate");
    by_len.resize(max_length + 1);
    for (const auto& path : all) by_len[path.length()].push_back(path);
  }
  index.resize(max_length + 1);
  for (std::size_t len = 0; len <= max_length; ++len) {
    for (std::size_t i = 0; i < by_len[len].size(); ++i) index[len][by_len[len][i]] = i;
    std::vector<Vec> rows;
    for (const auto& rel : rels) {
      if (rel.length > len) continue;
      const std::size_t spare = len - rel.length;
      for (std::size_t before = 0; before <= spare; ++before) {
        const std::size_t after = spare - before;
        for (const auto& u : by_len[before]) {
          if (u.target != rel.terms.front().second.source) continue;
          for (const auto& v : by_len[after]) {
            if (v.source != rel.terms.front().second.target) continue;
            Vec row(by_len[len].size(), 0);
            for (const auto& [c, t] : rel.terms) {
              Path full = *concatenate(*concatenate(u, t), v);
              const std::size_t at = index[len].at(full);
              row[at] = f.add(row[at], c);
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    ExactMatrix m(rows.size(), by_len[len].size(), p);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
    ideal.push_back(rref(m));
    if (ideal.back().rank == by_len[len].size()) {
      nil = len;
      found = true;
      break;
    }
  }
  if (!found)
    throw PreconditionError("make_path_algebra: quotient is not finite dimensional within path length " +
                            std::to_string(max_length));

  // basis: non-pivot paths of each degree below nil
  std::vector<Path> basis;
  std::vector<std::vector<long long>> basis_index(nil);  // per degree: path position -> basis index or -1
  for (std::size_t len = 0; len < nil; ++len) {
    std::vector<bool> pivot(by_len[len].size(), false);
    for (auto c : ideal[len].pivot_cols) pivot[c] = true;
    basis_index[len].assign(by_len[len].size(), -1);
    for (std::size_t i = 0; i < by_len[len].size(); ++i)
      if (!pivot[i]) {
        basis_index[len][i] = static_cast<long long>(basis.size());
        basis.push_back(by_len[len][i]);
      }
  }
  const std::size_t d = basis.size();
  auto normal_form = [&](const Path& path) {
    Vec out(d, 0);
    const std::size_t len = path.length();
    if (len >= nil) return out;
    const std::size_t pos = index[len].at(path);
    if (basis_index[len][pos] >= 0) {
      out[static_cast<std::size_t>(basis_index[len][pos])] = 1;
      return out;
    }
    const RowEchelon& e = ideal[len];
    std::size_t r = 0;
    while (e.pivot_cols[r] != pos) ++r;
    for (std::size_t c = 0; c < by_len[len].size(); ++c)
      if (basis_index[len][c] >= 0 && e.reduced.at(r, c))
        out[static_cast<std::size_t>(basis_index[len][c])] = f.neg(e.reduced.at(r, c));
    return out;
  };

  Algebra::Spec s;
  s.p = p;
  s.name = name.empty() ? (q.name.empty() ? std::string("kQ") : "k" + q.name) : std::move(name);
  s.constants.assign(d * d * d, 0);
  s.unit.assign(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    s.labels.push_back(q.path_label(basis[i]));
    for (std::size_t j = 0; j < d; ++j) {
      // b_i b_j = "b_j then b_i"
      auto prod = concatenate(basis[j], basis[i]);
      if (!prod) continue;
      const Vec nf = normal_form(*prod);
      for (std::size_t k = 0; k < d; ++k) s.constants[(i * d + j) * d + k] = nf[k];
    }
    if (basis[i].length() == 0) {
      s.unit[i] = 1;
      Vec e(d, 0);
      e[i] = 1;
      s.idempotents.push_back(e);
    } else {
      Vec r(d, 0);
      r[i] = 1;
      s.radical.push_back(r);
    }
  }
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrows()[a];
    Vec g = normal_form(Path{arr.source, arr.target, {a}});
    if (std::any_of(g.begin(), g.end(), [](Residue x) { return x != 0; })) s.generators.push_back(std::move(g));
  }
  if (s.generators.empty()) s.generators.push_back(s.unit);
  return Algebra(std::move(s));
}

Algebra tensor_with_path_algebra(const Algebra& lambda, const Quiver& q, std::string name) {
  const auto paths = all_paths(q);
  const std::size_t np = paths.size(), dl = lambda.dim(), d = dl * np;
  std::map<Path, std::size_t> pindex;
  for (std::size_t i = 0; i < np; ++i) pindex[paths[i]] = i;
  std::vector<std::vector<long long>> pmul(np, std::vector<long long>(np, -1));
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < np; ++b)
      if (auto c = concatenate(paths[b], paths[a])) pmul[a][b] = static_cast<long long>(pindex.at(*c));

  Algebra::Spec s;
  s.p = lambda.field_char();
  s.name = name.empty() ? lambda.name() + "(x)k" + q.name : std::move(name);
  s.constants.assign(d * d * d, 0);
  s.unit.assign(d, 0);
  for (std::size_t a = 0; a < dl; ++a)
    for (std::size_t pa = 0; pa < np; ++pa) s.labels.push_back(lambda.labels()[a] + "|" + q.path_label(paths[pa]));
  for (std::size_t a = 0; a < dl; ++a)
    for (std::size_t pa = 0; pa < np; ++pa)
      for (std::size_t b = 0; b < dl; ++b)
        for (std::size_t pb = 0; pb < np; ++pb) {
          if (pmul[pa][pb] < 0) continue;
          const std::size_t pr = static_cast<std::size_t>(pmul[pa][pb]);
          const std::size_t i = a * np + pa, j = b * np + pb;
          for (std::size_t k = 0; k < dl; ++k) s.constants[(i * d + j) * d + k * np + pr] = lambda.constant(a, b, k);
        }
  auto embed = [&](const Vec& x, std::size_t path) {
    Vec out(d, 0);
    for (std::size_t a = 0; a < dl; ++a) out[a * np + path] = x[a];
    return out;
  };
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const std::size_t pv = pindex.at(Path{v, v, {}});
    const Vec u = embed(lambda.unit(), pv);
    for (std::size_t k = 0; k < d; ++k) s.unit[k] = (s.unit[k] + u[k]) % s.p;
    for (const auto& e : lambda.idempotents()) s.idempotents.push_back(embed(e, pv));
    for (const auto& g : lambda.generators()) s.generators.push_back(embed(g, pv));
  }
  for (std::size_t pa = 0; pa < np; ++pa) {
    if (paths[pa].length() == 0) {
      for (const auto& r : lambda.radical()) s.radical.push_back(embed(r, pa));
    } else {
      for (std::size_t a = 0; a < dl; ++a) s.radical.push_back(embed(lambda.basis_vector(a), pa));
      if (paths[pa].length() == 1) s.generators.push_back(embed(lambda.unit(), pa));
    }
  }
  return Algebra(std::move(s));
}

// ---------------------------------------------------------------- modules

namespace {

std::shared_ptr<Module::Body> make_body(std::size_t dim, std::vector<ExactMatrix> actions, std::string name) {
  auto b = std::make_shared<Module::Body>();
  b->dim = dim;
  b->actions = std::move(actions);
  b->name = std::move(name);
  b->id = next_module_id.fetch_add(1);
  return b;
}

std::size_t dim_from_actions(const Algebra& a, const std::vector<ExactMatrix>& actions) {
  if (!a.valid()) throw Error("Module: algebra is not initialised");
  if (actions.size() != a.dim())
    throw Error("Module: expected " + std::to_string(a.dim()) + " action matrices, got " + std::to_string(actions.size()));
  if (actions.empty()) return 0;
  return actions.front().rows();
}

}  // namespace

Module::Module(Algebra algebra, std::vector<ExactMatrix> actions, std::string name) {
  const std::size_t n = dim_from_actions(algebra, actions);
  algebra_ = std::move(algebra);
  body_ = make_body(n, std::move(actions), std::move(name));
  validate();
}

Module Module::trusted(Algebra algebra, std::vector<ExactMatrix> actions, std::string name) {
  const std::size_t n = dim_from_actions(algebra, actions);
  auto body = make_body(n, std::move(actions), std::move(name));
  return Module(std::move(algebra), std::move(body));
}

Module Module::zero(const Algebra& algebra) {
  std::vector<ExactMatrix> acts(algebra.dim(), ExactMatrix(0, 0, algebra.field_char()));
  return trusted(algebra, std::move(acts), "0");
}

std::size_t Module::dim() const { return body_ ? body_->dim : 0; }
const ExactMatrix& Module::action(std::size_t i) const { return body_->actions.at(i); }
const std::vector<ExactMatrix>& Module::actions() const { return body_->actions; }
const std::string& Module::name() const { return body_->name; }
std::uint64_t Module::id() const { return body_->id; }

ExactMatrix Module::action_of(const Vec& element) const {
  if (element.size() != algebra_.dim()) throw Error("Module::action_of: element has wrong length");
  ExactMatrix out(dim(), dim(), field_char());
  for (std::size_t i = 0; i < element.size(); ++i)
    if (element[i]) out.add_scaled(element[i], body_->actions[i]);
  return out;
}

Module Module::renamed(std::string name) const {
  auto b = std::make_shared<Body>();
  b->dim = body_->dim;
  b->actions = body_->actions;
  b->name = std::move(name);
  b->id = body_->id;  // same structure, so caches keyed by id stay valid
  return Module(algebra_, std::move(b));
}

namespace {

void ensure_adapted(const Module& m, const Module::Body& body) {
  std::call_once(body.adapted_once, [&] {
    const Algebra& a = m.algebra();
    const std::uint32_t p = a.field_char();
    std::vector<ExactMatrix> blocks;
    body.block_dims.clear();
    for (const auto& e : a.idempotents()) {
      ExactMatrix cb = column_basis(m.action_of(e));
      body.block_dims.push_back(cb.cols());
      blocks.push_back(std::move(cb));
    }
    body.adapted = hstack(blocks, body.dim, p);
    auto inv = inverse(body.adapted);
    if (!inv) throw Error("Module: idempotent blocks do not span the module");
    body.adapted_inv = std::move(*inv);
    for (const auto& g : a.generators()) body.generator_actions.push_back(body.adapted_inv * m.action_of(g) * body.adapted);
  });
}

}  // namespace

const ExactMatrix& Module::adapted_basis() const {
  ensure_adapted(*this, *body_);
  return body_->adapted;
}
const ExactMatrix& Module::adapted_basis_inverse() const {
  ensure_adapted(*this, *body_);
  return body_->adapted_inv;
}
const std::vector<std::size_t>& Module::block_dims() const {
  ensure_adapted(*this, *body_);
  return body_->block_dims;
}
const ExactMatrix& Module::adapted_generator_action(std::size_t g) const {
  ensure_adapted(*this, *body_);
  return body_->generator_actions.at(g);
}

void Module::validate() const {
  const Algebra& a = algebra_;
  const std::size_t n = dim(), d = a.dim();
  for (std::size_t i = 0; i < d; ++i) {
    const ExactMatrix& m = body_->actions[i];
    if (m.field_char() != a.field_char())
      throw MismatchError("Module: action matrix characteristic differs from the algebra");
    if (m.rows() != n || m.cols() != n) throw Error("Module: action matrices must all be square of equal size");
  }
  if (!action_of(a.unit()).is_identity()) throw Error("Module: the unit does not act as the identity");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ExactMatrix rhs(n, n, a.field_char());
      for (std::size_t k = 0; k < d; ++k)
        if (auto c = a.constant(i, j, k)) rhs.add_scaled(c, body_->actions[k]);
      if (!(body_->actions[i] * body_->actions[j] == rhs))
        throw Error("Module: action does not respect the product " + a.labels()[i] + " * " + a.labels()[j]);
    }
}

void require_same_algebra(const Module& a, const Module& b, const char* where) {
  if (a.field_char() != b.field_char())
    throw MismatchError(std::string(where) + ": modules have different characteristics");
  if (!(a.algebra() == b.algebra())) throw MismatchError(std::string(where) + ": modules live over different algebras");
}

Module regular_module(const Algebra& algebra) {
  auto memo = algebra_memo(algebra, "regular", [&] {
    std::vector<ExactMatrix> acts;
    const std::size_t d = algebra.dim();
    for (std::size_t i = 0; i < d; ++i) {
      ExactMatrix m(d, d, algebra.field_char());
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) m.set(k, j, algebra.constant(i, j, k));
      acts.push_back(std::move(m));
    }
    return std::vector<Module>{Module::trusted(algebra, std::move(acts), algebra.name().empty() ? "A" : algebra.name())};
  });
  return memo.front();
}

std::vector<Module> algebra_memo(const Algebra& algebra, const std::string& key,
                                 const std::function<std::vector<Module>()>& make) {
  const Algebra::Impl& impl = *static_cast<const Algebra::Impl*>(algebra.identity());
  auto attach = [&](const std::vector<std::shared_ptr<const Module::Body>>& bodies) {
    std::vector<Module> out;
    for (const auto& b : bodies) out.push_back(Module(algebra, b));
    return out;
  };
  {
    std::lock_guard lock(impl.cache_mutex);
    auto it = impl.memo.find(key);
    if (it != impl.memo.end()) return attach(it->second);
  }
  std::vector<Module> made = make();
  std::lock_guard lock(impl.cache_mutex);
  auto& slot = impl.memo[key];
  if (slot.empty())
    for (const auto& m : made) slot.push_back(m.body_);
  return attach(slot);
}

ExactMatrix socle_basis(const Module& m) {
  const auto& rad = m.algebra().radical();
  const std::size_t n = m.dim();
  if (rad.empty()) return ExactMatrix::identity(n, m.field_char());
  std::vector<ExactMatrix> acts;
  for (const auto& r : rad) acts.push_back(m.action_of(r));
  const ExactMatrix stacked = vstack(acts, n, m.field_char());
  const auto ker = kernel_basis(stacked);
  return ExactMatrix::from_columns(m.field_char(), n, ker);
}

ExactMatrix radical_basis(const Module& m) {
  const auto& rad = m.algebra().radical();
  const std::size_t n = m.dim();
  if (rad.empty() || n == 0) return ExactMatrix(n, 0, m.field_char());
  std::vector<ExactMatrix> acts;
  for (const auto& r : rad) acts.push_back(m.action_of(r));
  return column_basis(hstack(acts, n, m.field_char()));
}

// ---------------------------------------------------------------- maps

ModuleMap::ModuleMap(Module source, Module target, ExactMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  validate();
}

ModuleMap ModuleMap::trusted(Module source, Module target, ExactMatrix matrix) {
  ModuleMap f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.matrix_ = std::move(matrix);
  return f;
}

ModuleMap ModuleMap::identity(const Module& m) {
  return trusted(m, m, ExactMatrix::identity(m.dim(), m.field_char()));
}

ModuleMap ModuleMap::zero(const Module& source, const Module& target) {
  require_same_algebra(source, target, "ModuleMap::zero");
  return trusted(source, target, ExactMatrix(target.dim(), source.dim(), source.field_char()));
}

std::size_t ModuleMap::rank() const { return cotri::rank(matrix_); }

void ModuleMap::validate() const {
  require_same_algebra(source_, target_, "ModuleMap");
  if (matrix_.field_char() != source_.field_char()) throw MismatchError("ModuleMap: matrix characteristic differs");
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
    throw Error("ModuleMap: matrix shape is not target.dim x source.dim");
  for (std::size_t i = 0; i < source_.algebra().dim(); ++i)
    if (!(matrix_ * source_.action(i) == target_.action(i) * matrix_))
      throw Error("ModuleMap: matrix does not intertwine the action of " + source_.algebra().labels()[i]);
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.target().id() != g.source().id() && f.target().dim() != g.source().dim())
    throw MismatchError("compose: codomain of f is not the domain of g");
  require_same_algebra(f.target(), g.source(), "compose");
  return ModuleMap::trusted(f.source(), g.target(), g.matrix() * f.matrix());
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
  if (f.source().dim() != g.source().dim() || f.target().dim() != g.target().dim())
    throw MismatchError("add: maps have different shapes");
  return ModuleMap::trusted(f.source(), f.target(), f.matrix() + g.matrix());
}

ModuleMap scale(Residue c, const ModuleMap& f) {
  return ModuleMap::trusted(f.source(), f.target(), f.matrix().scaled(c % f.source().field_char()));
}

std::optional<std::string> ShortExactSequence::violation() const {
  if (f.target().dim() != g.source().dim()) return "middle terms of f and g differ";
  if (!f.is_injective()) return "f is not injective";
  if (!g.is_surjective()) return "g is not surjective";
  if (!(g.matrix() * f.matrix()).is_zero()) return "g f is not zero";
  if (middle().dim() != left().dim() + right().dim()) return "dimensions do not add up";
  return std::nullopt;
}

// ---------------------------------------------------------------- Hom

namespace {

std::vector<ExactMatrix> compute_hom(const Module& m, const Module& n) {
  const std::uint32_t p = m.field_char();
  const std::size_t dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  const auto& bm = m.block_dims();
  const auto& bn = n.block_dims();
  std::vector<std::size_t> om(bm.size() + 1, 0), on(bn.size() + 1, 0), ou(bm.size() + 1, 0);
  for (std::size_t b = 0; b < bm.size(); ++b) {
    om[b + 1] = om[b] + bm[b];
    on[b + 1] = on[b] + bn[b];
    ou[b + 1] = ou[b] + bm[b] * bn[b];
  }
  const std::size_t unknowns = ou.back();
  if (unknowns == 0) return {};
  std::vector<std::size_t> block_m(dm), block_n(dn);
  for (std::size_t b = 0; b < bm.size(); ++b) {
    for (std::size_t r = om[b]; r < om[b + 1]; ++r) block_m[r] = b;
    for (std::size_t r = on[b]; r < on[b + 1]; ++r) block_n[r] = b;
  }
  // unknown index of F^[r][c] (r in N, c in M, same block)
  auto var = [&](std::size_t r, std::size_t c) {
    const std::size_t b = block_n[r];
    return ou[b] + (r - on[b]) * bm[b] + (c - om[b]);
  };
  const PrimeField f{p};
  std::vector<Vec> rows;
  Vec row(unknowns, 0);
  for (std::size_t g = 0; g < m.algebra().generators().size(); ++g) {
    const ExactMatrix& am = m.adapted_generator_action(g);
    const ExactMatrix& an = n.adapted_generator_action(g);
    // (F A^M - A^N F)[r][c] = 0
    for (std::size_t r = 0; r < dn; ++r) {
      const std::size_t br = block_n[r];
      for (std::size_t c = 0; c < dm; ++c) {
        std::fill(row.begin(), row.end(), 0);
        bool any = false;
        for (std::size_t k = om[br]; k < om[br + 1]; ++k) {
          if (const Residue v = am.at(k, c)) {
            Residue& x = row[var(r, k)];
            x = f.add(x, v);
            any = true;
          }
        }
        const std::size_t bc = block_m[c];
        for (std::size_t k = on[bc]; k < on[bc + 1]; ++k) {
          if (const Residue v = an.at(r, k)) {
            Residue& x = row[var(k, c)];
            x = f.sub(x, v);
            any = true;
          }
        }
        if (any && std::any_of(row.begin(), row.end(), [](Residue x) { return x != 0; })) rows.push_back(row);
      }
    }
  }
  std::vector<Vec> ker;
  if (rows.empty()) {
    for (std::size_t i = 0; i < unknowns; ++i) {
      Vec v(unknowns, 0);
      v[i] = 1;
      ker.push_back(std::move(v));
    }
  } else {
    ExactMatrix sys(rows.size(), unknowns, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto dst = sys.row(r);
      std::copy(rows[r].begin(), rows[r].end(), dst.begin());
    }
    ker = kernel_basis(sys);
  }
  std::vector<ExactMatrix> out;
  out.reserve(ker.size());
  for (const auto& v : ker) {
    ExactMatrix fh(dn, dm, p);
    for (std::size_t b = 0; b < bm.size(); ++b)
      for (std::size_t r = on[b]; r < on[b + 1]; ++r)
        for (std::size_t c = om[b]; c < om[b + 1]; ++c)
          if (const Residue x = v[var(r, c)]) fh.set(r, c, x);
    out.push_back(n.adapted_basis() * fh * m.adapted_basis_inverse());
  }
  return out;
}

const Algebra::Impl& impl_of(const Algebra& a) { return *static_cast<const Algebra::Impl*>(a.identity()); }

std::vector<ExactMatrix> hom_matrices(const Module& m, const Module& n) {
  require_same_algebra(m, n, "hom_basis");
  const auto& impl = impl_of(m.algebra());
  const auto key = std::make_pair(m.id(), n.id());
  {
    std::lock_guard lock(impl.cache_mutex);
    auto it = impl.hom_cache.find(key);
    if (it != impl.hom_cache.end()) return it->second;
  }
  auto mats = compute_hom(m, n);
  std::lock_guard lock(impl.cache_mutex);
  if (impl.hom_cache.size() >= kHomCacheLimit) impl.hom_cache.clear();
  impl.hom_cache.emplace(key, mats);
  return mats;
}

}  // namespace

std::vector<ModuleMap> hom_basis(const Module& m, const Module& n) {
  std::vector<ModuleMap> out;
  for (auto& mat : hom_matrices(m, n)) out.push_back(ModuleMap::trusted(m, n, std::move(mat)));
  return out;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom_matrices(m, n).size(); }

// ---------------------------------------------------------------- sub/quotient

SubmoduleResult submodule(const Module& m, const ExactMatrix& basis, std::string name) {
  const std::uint32_t p = m.field_char();
  if (basis.rows() != m.dim()) throw Error("submodule: basis has wrong number of rows");
  if (basis.cols() == 0) {
    Module z = Module::zero(m.algebra());
    return {z, ModuleMap::trusted(z, m, ExactMatrix(m.dim(), 0, p))};
  }
  const LeftInverse li = left_inverse(basis);
  std::vector<ExactMatrix> acts;
  acts.reserve(m.algebra().dim());
  for (const auto& a : m.actions()) acts.push_back(coordinates(li, a * basis));
  Module sub = Module::trusted(m.algebra(), std::move(acts), std::move(name));
  return {sub, ModuleMap::trusted(sub, m, basis)};
}

QuotientResult quotient(const Module& m, const ExactMatrix& basis, std::string name) {
  const std::uint32_t p = m.field_char();
  const std::size_t n = m.dim(), k = basis.cols();
  const ExactMatrix comp = complement_basis(basis);
  const std::size_t q = comp.cols();
  if (k + q != n) throw Error("quotient: basis columns are linearly dependent");
  if (q == 0) {
    Module z = Module::zero(m.algebra());
    return {z, ModuleMap::trusted(m, z, ExactMatrix(0, n, p))};
  }
  const ExactMatrix blocks[2] = {basis, comp};
  const ExactMatrix w = hstack(blocks, n, p);
  const ExactMatrix winv = *inverse(w);
  const ExactMatrix proj = winv.block(k, 0, q, n);
  std::vector<ExactMatrix> acts;
  acts.reserve(m.algebra().dim());
  for (const auto& a : m.actions()) acts.push_back(proj * a * comp);
  Module quo = Module::trusted(m.algebra(), std::move(acts), std::move(name));
  return {quo, ModuleMap::trusted(m, quo, proj)};
}

Factorization factor(const ModuleMap& f) {
  const Module& src = f.source();
  const Module& tgt = f.target();
  const std::uint32_t p = src.field_char();
  Factorization out;
  out.kernel = submodule(src, ExactMatrix::from_columns(p, src.dim(), kernel_basis(f.matrix())), "ker");
  const ExactMatrix img = column_basis(f.matrix());
  auto im = submodule(tgt, img, "im");
  out.image = im.module;
  out.image_inclusion = im.inclusion;
  if (img.cols() == 0) {
    out.coimage_projection = ModuleMap::trusted(src, out.image, ExactMatrix(0, src.dim(), p));
  } else {
    const LeftInverse li = left_inverse(img);
    out.coimage_projection = ModuleMap::trusted(src, out.image, coordinates(li, f.matrix()));
  }
  out.cokernel = quotient(tgt, img, "coker");
  return out;
}

SubmoduleResult kernel(const ModuleMap& f) {
  const std::uint32_t p = f.source().field_char();
  return submodule(f.source(), ExactMatrix::from_columns(p, f.source().dim(), kernel_basis(f.matrix())), "ker");
}

QuotientResult cokernel(const ModuleMap& f) { return quotient(f.target(), column_basis(f.matrix()), "coker"); }

// ---------------------------------------------------------------- biproducts

Biproduct direct_sum(const Algebra& algebra, std::span<const Module> modules, std::string name) {
  const std::uint32_t p = algebra.field_char();
  std::size_t total = 0;
  for (const auto& m : modules) {
    if (!(m.algebra() == algebra)) throw MismatchError("direct_sum: summand over a different algebra");
    total += m.dim();
  }
  std::vector<ExactMatrix> acts;
  acts.reserve(algebra.dim());
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    ExactMatrix a(total, total, p);
    std::size_t off = 0;
    for (const auto& m : modules) {
      a.set_block(off, off, m.action(i));
      off += m.dim();
    }
    acts.push_back(std::move(a));
  }
  if (name.empty()) {
    for (const auto& m : modules) {
      if (!name.empty()) name += "+";
      name += m.name().empty() ? "?" : m.name();
    }
    if (name.empty()) name = "0";
  }
  Biproduct out;
  out.sum = Module::trusted(algebra, std::move(acts), std::move(name));
  std::size_t off = 0;
  for (const auto& m : modules) {
    ExactMatrix inj(total, m.dim(), p), pr(m.dim(), total, p);
    for (std::size_t k = 0; k < m.dim(); ++k) {
      inj.set(off + k, k, 1);
      pr.set(k, off + k, 1);
    }
    out.injections.push_back(ModuleMap::trusted(m, out.sum, std::move(inj)));
    out.projections.push_back(ModuleMap::trusted(out.sum, m, std::move(pr)));
    off += m.dim();
  }
  return out;
}

Module direct_sum_module(const Algebra& algebra, std::span<const Module> modules, std::string name) {
  return direct_sum(algebra, modules, std::move(name)).sum;
}

ModuleMap copairing(const Biproduct& sources, std::span<const ModuleMap> maps) {
  if (maps.size() != sources.injections.size()) throw Error("copairing: wrong number of maps");
  if (maps.empty()) throw Error("copairing: target is undetermined for an empty family");
  const Module& target = maps.front().target();
  ExactMatrix m(target.dim(), sources.sum.dim(), target.field_char());
  for (std::size_t k = 0; k < maps.size(); ++k) m += maps[k].matrix() * sources.projections[k].matrix();
  return ModuleMap::trusted(sources.sum, target, std::move(m));
}

ModuleMap pairing(const Biproduct& targets, std::span<const ModuleMap> maps) {
  if (maps.size() != targets.injections.size()) throw Error("pairing: wrong number of maps");
  if (maps.empty()) throw Error("pairing: source is undetermined for an empty family");
  const Module& source = maps.front().source();
  ExactMatrix m(targets.sum.dim(), source.dim(), source.field_char());
  for (std::size_t k = 0; k < maps.size(); ++k) m += targets.injections[k].matrix() * maps[k].matrix();
  return ModuleMap::trusted(source, targets.sum, std::move(m));
}

std::optional<ModuleMap> factor_through_epi(const ModuleMap& epi, const ModuleMap& h) {
  if (epi.source().dim() != h.source().dim()) throw MismatchError("factor_through_epi: domains differ");
  if (!epi.is_surjective()) throw PreconditionError("factor_through_epi: map is not onto");
  auto x = solve_matrix(epi.matrix().transpose(), h.matrix().transpose());
  if (!x) return std::nullopt;
  return ModuleMap::trusted(epi.target(), h.target(), x->transpose());
}

std::optional<ModuleMap> factor_through_mono(const ModuleMap& mono, const ModuleMap& h) {
  if (mono.target().dim() != h.target().dim()) throw MismatchError("factor_through_mono: codomains differ");
  if (!mono.is_injective()) throw PreconditionError("factor_through_mono: map is not injective");
  auto x = solve_matrix(mono.matrix(), h.matrix());
  if (!x) return std::nullopt;
  return ModuleMap::trusted(h.source(), mono.source(), *x);
}

Pullback pullback(const ModuleMap& f, const ModuleMap& g) {
  if (f.target().dim() != g.target().dim()) throw MismatchError("pullback: maps do not share a codomain");
  require_same_algebra(f.target(), g.target(), "pullback");
  const Algebra& alg = f.source().algebra();
  const std::uint32_t p = alg.field_char();
  const Module parts[2] = {f.source(), g.source()};
  const Biproduct ab = direct_sum(alg, parts);
  const ExactMatrix blocks[2] = {f.matrix(), g.matrix().scaled(p - 1)};
  const ExactMatrix h = hstack(blocks, f.target().dim(), p);
  auto ker = submodule(ab.sum, ExactMatrix::from_columns(p, ab.sum.dim(), kernel_basis(h)), "pullback");
  Pullback out;
  out.object = ker.module;
  out.to_first = compose(ab.projections[0], ker.inclusion);
  out.to_second = compose(ab.projections[1], ker.inclusion);
  return out;
}

Pushout pushout(const ModuleMap& f, const ModuleMap& g) {
  if (f.source().dim() != g.source().dim()) throw MismatchError("pushout: maps do not share a domain");
  require_same_algebra(f.source(), g.source(), "pushout");
  const Algebra& alg = f.source().algebra();
  const std::uint32_t p = alg.field_char();
  const Module parts[2] = {f.target(), g.target()};
  const Biproduct bc = direct_sum(alg, parts);
  const ExactMatrix blocks[2] = {f.matrix(), g.matrix().scaled(p - 1)};
  const ExactMatrix h = vstack(blocks, f.source().dim(), p);
  auto coker = quotient(bc.sum, column_basis(h), "pushout");
  Pushout out;
  out.object = coker.module;
  out.from_first = compose(coker.projection, bc.injections[0]);
  out.from_second = compose(coker.projection, bc.injections[1]);
  return out;
}

// ---------------------------------------------------------------- iso / split

namespace {

ExactMatrix combine(const std::vector<ExactMatrix>& basis, const std::vector<Residue>& coeffs, std::size_t rows,
                    std::size_t cols, std::uint32_t p) {
  ExactMatrix out(rows, cols, p);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i]) out.add_scaled(coeffs[i], basis[i]);
  return out;
}

// Calls visit on every element of span(basis) (except 0) until it returns true.
template <class Visit>
bool enumerate_span(const std::vector<ExactMatrix>& basis, std::size_t rows, std::size_t cols, std::uint32_t p,
                    Visit&& visit) {
  const std::size_t d = basis.size();
  std::vector<Residue> c(d, 0);
  ExactMatrix cur(rows, cols, p);
  const PrimeField f{p};
  while (true) {
    std::size_t k = 0;
    while (k < d) {
      cur.add_scaled(1, basis[k]);
      c[k] = f.add(c[k], 1);
      if (c[k] != 0) break;
      ++k;  // wrapped: cur has gone back to its old value in this slot
    }
    if (k == d) return false;
    if (visit(cur)) return true;
  }
}

bool budget_allows(std::uint32_t p, std::size_t d, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > budget / p) return false;
    total *= p;
  }
  return total <= budget;
}

std::vector<Residue> random_coeffs(std::mt19937_64& rng, std::size_t d, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  std::vector<Residue> c(d);
  for (auto& x : c) x = dist(rng);
  return c;
}

bool cheap_indecomposable(const Module& m) {
  if (m.dim() <= 1) return true;
  const std::size_t top = m.dim() - radical_basis(m).cols();
  if (top == 1) return true;
  return socle_basis(m).cols() == 1;
}

// One Fitting step: a decomposition M = ker phi^n (+) im phi^n with both parts nonzero.
std::optional<std::pair<ExactMatrix, ExactMatrix>> fitting_split(const ExactMatrix& phi) {
  const std::size_t n = phi.rows();
  const ExactMatrix pw = matrix_power(phi, n);
  const std::size_t r = rank(pw);
  if (r == 0 || r == n) return std::nullopt;
  return std::make_pair(ExactMatrix::from_columns(phi.field_char(), n, kernel_basis(pw)), column_basis(pw));
}

struct Piece {
  Module module;
  ExactMatrix inclusion;  // M-coordinates, dim M x dim piece
  ExactMatrix projection;  // dim piece x dim M
  bool certified;
};

void split_into(const Module& m, const ExactMatrix& incl, const ExactMatrix& proj, const SplitOptions& opts,
                std::mt19937_64& rng, std::vector<Piece>& out) {
  const std::uint32_t p = m.field_char();
  const std::size_t n = m.dim();
  if (n == 0) return;
  if (cheap_indecomposable(m)) {
    out.push_back({m, incl, proj, true});
    return;
  }
  const auto end = hom_matrices(m, m);
  if (end.size() == 1) {
    out.push_back({m, incl, proj, true});
    return;
  }
  std::optional<std::pair<ExactMatrix, ExactMatrix>> parts;
  for (const auto& e : end)
    if ((parts = fitting_split(e))) break;
  if (!parts)
    for (std::size_t i = 0; i < end.size() && !parts; ++i)
      for (std::size_t j = 0; j < end.size() && !parts; ++j) parts = fitting_split(end[i] * end[j]);
  for (std::size_t s = 0; s < opts.random_samples && !parts; ++s)
    parts = fitting_split(combine(end, random_coeffs(rng, end.size(), p), n, n, p));
  bool certified = false;
  if (!parts && budget_allows(p, end.size(), opts.exhaustive_budget)) {
    enumerate_span(end, n, n, p, [&](const ExactMatrix& phi) {
      parts = fitting_split(phi);
      return parts.has_value();
    });
    certified = !parts;
  }
  if (!parts) {
    out.push_back({m, incl, proj, certified});
    return;
  }
  const ExactMatrix blocks[2] = {parts->first, parts->second};
  const ExactMatrix w = hstack(blocks, n, p);
  const ExactMatrix winv = *inverse(w);
  const std::size_t k = parts->first.cols();
  const ExactMatrix proj_k = winv.block(0, 0, k, n), proj_i = winv.block(k, 0, n - k, n);
  auto a = submodule(m, parts->first);
  auto b = submodule(m, parts->second);
  split_into(a.module, incl * parts->first, proj_k * proj, opts, rng, out);
  split_into(b.module, incl * parts->second, proj_i * proj, opts, rng, out);
}

}  // namespace

SplitResult split_indecomposables(const Module& m, const SplitOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<Piece> pieces;
  const ExactMatrix id = ExactMatrix::identity(m.dim(), m.field_char());
  split_into(m, id, id, opts, rng, pieces);
  SplitResult out;
  for (auto& pc : pieces) {
    out.certified = out.certified && pc.certified;
    out.inclusions.push_back(ModuleMap::trusted(pc.module, m, pc.inclusion));
    out.projections.push_back(ModuleMap::trusted(m, pc.module, pc.projection));
    out.summands.push_back(std::move(pc.module));
  }
  return out;
}

std::optional<bool> is_indecomposable_exhaustive(const Module& m, std::uint64_t budget) {
  if (m.dim() == 0) return false;
  if (cheap_indecomposable(m)) return true;
  const auto end = hom_matrices(m, m);
  if (end.size() == 1) return true;
  if (!budget_allows(m.field_char(), end.size(), budget)) return std::nullopt;
  const bool splits = enumerate_span(end, m.dim(), m.dim(), m.field_char(),
                                     [](const ExactMatrix& phi) { return fitting_split(phi).has_value(); });
  return !splits;
}

std::optional<ModuleMap> isomorphism_of_indecomposables(const Module& m, const Module& n) {
  require_same_algebra(m, n, "isomorphism_of_indecomposables");
  if (m.dim() != n.dim()) return std::nullopt;
  if (m.dim() == 0) return ModuleMap::trusted(m, n, ExactMatrix(0, 0, m.field_char()));
  if (m.block_dims() != n.block_dims()) return std::nullopt;
  const auto fs = hom_matrices(m, n);
  if (fs.empty()) return std::nullopt;
  const auto gs = hom_matrices(n, m);
  for (const auto& f : fs) {
    if (rank(f) == m.dim()) return ModuleMap::trusted(m, n, f);
    for (const auto& g : gs)
      if (!is_nilpotent(g * f)) return ModuleMap::trusted(m, n, f);
  }
  return std::nullopt;
}

IsoResult is_isomorphic(const Module& m, const Module& n, const IsoOptions& opts) {
  require_same_algebra(m, n, "is_isomorphic");
  IsoResult res;
  const std::uint32_t p = m.field_char();
  if (m.dim() != n.dim()) {
    res.status = IsoStatus::not_isomorphic;
    res.reason = "dimensions differ";
    return res;
  }
  if (m.dim() == 0) {
    res.status = IsoStatus::isomorphic;
    res.isomorphism = ModuleMap::trusted(m, n, ExactMatrix(0, 0, p));
    return res;
  }
  if (m.block_dims() != n.block_dims()) {
    res.status = IsoStatus::not_isomorphic;
    res.reason = "idempotent block dimensions differ";
    return res;
  }
  const auto fs = hom_matrices(m, n);
  const std::size_t d = fs.size();
  if (d != hom_dim(n, m) || d != hom_dim(m, m) || d != hom_dim(n, n)) {
    res.status = IsoStatus::not_isomorphic;
    res.reason = "Hom dimensions differ";
    return res;
  }
  const std::size_t dim = m.dim();
  auto found = [&](const ExactMatrix& f) {
    res.status = IsoStatus::isomorphic;
    res.isomorphism = ModuleMap::trusted(m, n, f);
    return res;
  };
  for (const auto& f : fs)
    if (rank(f) == dim) return found(f);
  if (budget_allows(p, d, opts.exhaustive_budget)) {
    std::optional<ExactMatrix> hit;
    enumerate_span(fs, dim, dim, p, [&](const ExactMatrix& f) {
      if (rank(f) != dim) return false;
      hit = f;
      return true;
    });
    if (hit) return found(*hit);
    res.status = IsoStatus::not_isomorphic;
    res.reason = "no invertible map in exhaustively enumerated Hom space";
    return res;
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t s = 0; s < opts.random_samples; ++s) {
    ExactMatrix f = combine(fs, random_coeffs(rng, d, p), dim, dim, p);
    if (rank(f) == dim) return found(f);
  }
  // summand matching
  SplitOptions so;
  so.seed = opts.seed;
  const SplitResult sm = split_indecomposables(m, so);
  const SplitResult sn = split_indecomposables(n, so);
  if (sm.summands.size() != sn.summands.size()) {
    if (sm.certified && sn.certified) {
      res.status = IsoStatus::not_isomorphic;
      res.reason = "different numbers of indecomposable summands";
    } else {
      res.reason = "summand counts differ but splitting is not certified";
    }
    return res;
  }
  std::vector<bool> used(sn.summands.size(), false);
  ExactMatrix total(dim, dim, p);
  for (std::size_t a = 0; a < sm.summands.size(); ++a) {
    bool matched = false;
    for (std::size_t b = 0; b < sn.summands.size() && !matched; ++b) {
      if (used[b]) continue;
      if (auto iso = isomorphism_of_indecomposables(sm.summands[a], sn.summands[b])) {
        used[b] = true;
        matched = true;
        total += sn.inclusions[b].matrix() * iso->matrix() * sm.projections[a].matrix();
      }
    }
    if (!matched) {
      if (sm.certified && sn.certified) {
        res.status = IsoStatus::not_isomorphic;
        res.reason = "indecomposable summand without a partner";
      } else {
        res.reason = "summand matching failed on uncertified splitting";
      }
      return res;
    }
  }
  if (rank(total) == dim) return found(total);
  res.reason = "assembled summand isomorphism is singular";
  return res;
}

// ---------------------------------------------------------------- decompose

namespace {

constexpr std::uint32_t kBigPrime = 2147483647U;

std::optional<std::vector<std::size_t>> solve_multiplicities(const std::vector<std::vector<std::size_t>>& a,
                                                             const std::vector<std::size_t>& h) {
  const std::size_t k = h.size();
  ExactMatrix m(k, k, kBigPrime);
  Vec rhs(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) m.set(j, i, static_cast<long long>(a[j][i]));
    rhs[j] = static_cast<Residue>(h[j]);
  }
  auto x = solve(m, rhs);
  if (!x) return std::nullopt;
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    if ((*x)[i] > 4096) return std::nullopt;  // negative or non-integral lift
    out[i] = (*x)[i];
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < k; ++i) s += static_cast<std::uint64_t>(a[j][i]) * out[i];
    if (s != h[j]) return std::nullopt;
  }
  return out;
}

std::vector<std::size_t> decompose_by_splitting(const Module& m, std::span<const Module> catalog) {
  const SplitResult s = split_indecomposables(m);
  std::vector<std::size_t> mult(catalog.size(), 0);
  for (const auto& piece : s.summands) {
    bool matched = false;
    for (std::size_t i = 0; i < catalog.size() && !matched; ++i) {
      if (isomorphism_of_indecomposables(piece, catalog[i])) {
        ++mult[i];
        matched = true;
      }
    }
    if (!matched)
      throw DecompositionError("decompose: module " + m.name() + " has a summand of dimension " +
                               std::to_string(piece.dim()) + " outside the additive closure of the catalog");
  }
  return mult;
}

}  // namespace

std::vector<std::size_t> decompose_with(const Module& m, std::span<const Module> catalog,
                                        const std::vector<std::vector<std::size_t>>& hom_dims, bool catalog_complete) {
  for (const auto& c : catalog) require_same_algebra(m, c, "decompose");
  if (m.dim() == 0) return std::vector<std::size_t>(catalog.size(), 0);
  std::vector<std::size_t> h(catalog.size());
  for (std::size_t j = 0; j < catalog.size(); ++j) h[j] = hom_dim(catalog[j], m);
  auto mult = solve_multiplicities(hom_dims, h);
  if (mult) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < catalog.size(); ++i) total += (*mult)[i] * catalog[i].dim();
    bool ok = total == m.dim();
    for (std::size_t j = 0; ok && j < catalog.size(); ++j) {
      std::size_t s = 0;
      for (std::size_t i = 0; i < catalog.size(); ++i) s += (*mult)[i] * hom_dims[i][j];
      ok = s == hom_dim(m, catalog[j]);
    }
    if (ok && catalog_complete) {
      std::vector<Module> parts;
      for (std::size_t i = 0; i < catalog.size(); ++i)
        for (std::size_t r = 0; r < (*mult)[i]; ++r) parts.push_back(catalog[i]);
      const Module rebuilt = direct_sum_module(m.algebra(), parts);
      IsoOptions io;
      io.random_samples = 64;
      const IsoResult iso = is_isomorphic(m, rebuilt, io);
      if (iso.status == IsoStatus::isomorphic) return *mult;
      if (iso.status == IsoStatus::not_isomorphic)
        throw DecompositionError("decompose: Hom counts match but " + m.name() +
                                 " is not isomorphic to the reconstructed sum (catalog incomplete)");
    }
  }
  return decompose_by_splitting(m, catalog);
}

std::vector<std::size_t> decompose(const Module& m, std::span<const Module> catalog) {
  std::vector<std::vector<std::size_t>> a(catalog.size(), std::vector<std::size_t>(catalog.size()));
  for (std::size_t j = 0; j < catalog.size(); ++j)
    for (std::size_t i = 0; i < catalog.size(); ++i) a[j][i] = hom_dim(catalog[j], catalog[i]);
  return decompose_with(m, catalog, a, true);
}

}  // namespace cotri
