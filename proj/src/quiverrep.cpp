#include "cotri/quiverrep.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "cotri/error.hpp"
#include "cotri/homology.hpp"

namespace cotri {

namespace {

std::string quiver_key(const Quiver& q) {
  std::ostringstream s;
  s << q.name << '|';
  for (const auto& v : q.vertices()) s << v << ',';
  s << '|';
  for (const auto& a : q.arrows()) s << a.label << ':' << a.source << '>' << a.target << ',';
  return s.str();
}

struct PathIndex {
  std::vector<Path> paths;
  std::map<Path, std::size_t> index;
};

const PathIndex& path_index(const Quiver& q) {
  static std::mutex mu;
  static std::map<std::string, PathIndex> memo;
  std::lock_guard lock(mu);
  auto [it, fresh] = memo.try_emplace(quiver_key(q));
  if (fresh) {
    it->second.paths = all_paths(q);
    for (std::size_t i = 0; i < it->second.paths.size(); ++i) it->second.index[it->second.paths[i]] = i;
  }
  return it->second;
}

Path arrow_path(const Quiver& q, std::size_t a) {
  return Path{q.arrows()[a].source, q.arrows()[a].target, {a}};
}

std::string vname(const Quiver& q, std::size_t v) { return q.vertices().at(v); }

Module zero_over(const Algebra& a) { return Module::zero(a); }

Module copies(const Module& m, std::size_t n, const std::string& name) {
  std::vector<Module> parts(n, m);
  if (n == 1) return m;
  return direct_sum_module(m.algebra(), parts, name);
}

ExactMatrix block_identity(std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0, std::size_t n,
                           std::uint32_t p) {
  ExactMatrix out(rows, cols, p);
  for (std::size_t i = 0; i < n; ++i) out.set(r0 + i, c0 + i, 1);
  return out;
}

bool same_setting(const Representation& x, const Representation& y) {
  return x.lambda() == y.lambda() && quiver_key(x.quiver()) == quiver_key(y.quiver());
}

}  // namespace

Algebra rep_algebra(const Algebra& lambda, const Quiver& q) {
  static std::mutex mu;
  static std::map<std::pair<const void*, std::string>, Algebra> memo;
  // Keeps lambda alive so its identity cannot be reused by another algebra.
  static std::vector<Algebra> keep;
  if (!q.is_acyclic()) throw PreconditionError("rep_algebra: quiver has oriented cycles");
  std::lock_guard lock(mu);
  const auto key = std::make_pair(lambda.identity(), quiver_key(q));
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  keep.push_back(lambda);
  return memo.emplace(key, tensor_with_path_algebra(lambda, q)).first->second;
}

// ---------------------------------------------------------------- Representation

Representation::Representation(Quiver q, Algebra lambda, std::vector<Module> vertex_modules,
                               std::vector<ModuleMap> arrow_maps, std::string name)
    : q_(std::move(q)), lambda_(std::move(lambda)), vertex_(std::move(vertex_modules)), arrow_(std::move(arrow_maps)) {
  if (vertex_.size() != q_.vertex_count())
    throw MismatchError("Representation: expected " + std::to_string(q_.vertex_count()) + " vertex modules");
  if (arrow_.size() != q_.arrows().size())
    throw MismatchError("Representation: expected " + std::to_string(q_.arrows().size()) + " arrow maps");
  for (const auto& m : vertex_)
    if (!(m.algebra() == lambda_)) throw MismatchError("Representation: vertex module over a different algebra");
  for (std::size_t a = 0; a < arrow_.size(); ++a) {
    const auto& ar = q_.arrows()[a];
    const auto& f = arrow_[a];
    if (f.source().dim() != vertex_[ar.source].dim() || f.target().dim() != vertex_[ar.target].dim())
      throw MismatchError("Representation: arrow " + ar.label + " has the wrong shape");
    if (f.source().id() != vertex_[ar.source].id() || f.target().id() != vertex_[ar.target].id())
      arrow_[a] = ModuleMap(vertex_[ar.source], vertex_[ar.target], f.matrix());
  }

  const Algebra gamma = rep_algebra(lambda_, q_);
  const auto& pi = path_index(q_);
  const std::size_t np = pi.paths.size(), dl = lambda_.dim();
  const std::uint32_t p = lambda_.field_char();
  offsets_.resize(vertex_.size());
  std::size_t total = 0;
  for (std::size_t v = 0; v < vertex_.size(); ++v) {
    offsets_[v] = total;
    total += vertex_[v].dim();
  }
  std::vector<ExactMatrix> path_maps(np);
  for (std::size_t k = 0; k < np; ++k) path_maps[k] = path_map(pi.paths[k]).matrix();
  std::vector<ExactMatrix> actions(gamma.dim(), ExactMatrix(total, total, p));
  for (std::size_t a = 0; a < dl; ++a)
    for (std::size_t k = 0; k < np; ++k) {
      const Path& path = pi.paths[k];
      const Module& src = vertex_[path.source];
      if (src.dim() == 0 || vertex_[path.target].dim() == 0) continue;
      actions[a * np + k].set_block(offsets_[path.target], offsets_[path.source], path_maps[k] * src.action(a));
    }
  if (name.empty()) {
    name = "(";
    for (std::size_t v = 0; v < vertex_.size(); ++v) name += (v ? "," : "") + vertex_[v].name();
    name += ")";
  }
  module_ = Module::trusted(gamma, std::move(actions), std::move(name));
}

ModuleMap Representation::path_map(const Path& p) const {
  ModuleMap out = ModuleMap::identity(vertex_.at(p.source));
  for (const auto a : p.arrows) out = compose(arrow_.at(a), out);
  return out;
}

Representation Representation::zero(const Quiver& q, const Algebra& lambda) {
  std::vector<Module> vs(q.vertex_count(), zero_over(lambda));
  std::vector<ModuleMap> as;
  for (const auto& a : q.arrows()) as.push_back(ModuleMap::zero(vs[a.source], vs[a.target]));
  return Representation(q, lambda, std::move(vs), std::move(as), "0");
}

Representation Representation::from_module(const Module& m, const Quiver& q, const Algebra& lambda) {
  const Algebra gamma = rep_algebra(lambda, q);
  if (!(m.algebra() == gamma)) throw MismatchError("from_module: module is not over " + gamma.name());
  const auto& pi = path_index(q);
  const std::size_t np = pi.paths.size(), dl = lambda.dim(), d = m.dim();
  const std::uint32_t p = lambda.field_char();
  const Vec& unit = lambda.unit();
  auto unit_times = [&](std::size_t path) {
    ExactMatrix e(d, d, p);
    for (std::size_t a = 0; a < dl; ++a)
      if (unit[a]) e.add_scaled(unit[a], m.action(a * np + path));
    return e;
  };

  std::vector<ExactMatrix> bases;
  std::vector<std::size_t> dims, offs;
  std::size_t total = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    bases.push_back(column_basis(unit_times(pi.index.at(Path{v, v, {}}))));
    offs.push_back(total);
    dims.push_back(bases.back().cols());
    total += dims.back();
  }
  if (total != d) throw Error("from_module: vertex idempotents do not split the module");
  ExactMatrix b(d, d, p);
  for (std::size_t v = 0; v < bases.size(); ++v)
    if (dims[v]) b.set_block(0, offs[v], bases[v]);
  const auto binv = inverse(b);
  if (!binv) throw Error("from_module: vertex subspaces are not independent");
  auto conj = [&](const ExactMatrix& a) { return *binv * a * b; };

  std::vector<Module> vs;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const std::size_t pv = pi.index.at(Path{v, v, {}});
    std::vector<ExactMatrix> acts;
    for (std::size_t a = 0; a < dl; ++a) acts.push_back(conj(m.action(a * np + pv)).block(offs[v], offs[v], dims[v], dims[v]));
    vs.push_back(Module::trusted(lambda, std::move(acts), m.name() + "@" + vname(q, v)));
  }
  std::vector<ModuleMap> as;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto& ar = q.arrows()[a];
    const ExactMatrix blk =
        conj(unit_times(pi.index.at(arrow_path(q, a)))).block(offs[ar.target], offs[ar.source], dims[ar.target], dims[ar.source]);
    as.push_back(ModuleMap::trusted(vs[ar.source], vs[ar.target], blk));
  }
  return Representation(q, lambda, std::move(vs), std::move(as), m.name());
}

// ---------------------------------------------------------------- maps

bool RepMap::is_natural() const {
  const Quiver& q = source.quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto& ar = q.arrows()[a];
    if (!(target.arrow_map(a).matrix() * components[ar.source].matrix() ==
          components[ar.target].matrix() * source.arrow_map(a).matrix()))
      return false;
  }
  return true;
}

ModuleMap RepMap::to_module_map() const {
  ExactMatrix mat(target.total_dim(), source.total_dim(), source.lambda().field_char());
  for (std::size_t v = 0; v < components.size(); ++v)
    if (source.at(v).dim() && target.at(v).dim())
      mat.set_block(target.offset(v), source.offset(v), components[v].matrix());
  return ModuleMap(source.module(), target.module(), mat);
}

RepMap RepMap::from_module_map(const Representation& x, const Representation& y, const ModuleMap& f) {
  RepMap out{x, y, {}};
  for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v)
    out.components.push_back(ModuleMap::trusted(
        x.at(v), y.at(v), f.matrix().block(y.offset(v), x.offset(v), y.at(v).dim(), x.at(v).dim())));
  return out;
}

// ---------------------------------------------------------------- functors

Representation e_lambda(std::size_t i, const Module& m, const Quiver& q) {
  const std::uint32_t p = m.field_char();
  const std::size_t n = m.dim();
  std::vector<std::vector<Path>> from_i(q.vertex_count());
  std::vector<Module> vs;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    from_i[j] = path_set(q, i, j);
    vs.push_back(copies(m, from_i[j].size(), m.name() + "^" + std::to_string(from_i[j].size())));
  }
  std::vector<ModuleMap> as;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto& ar = q.arrows()[a];
    ExactMatrix mat(vs[ar.target].dim(), vs[ar.source].dim(), p);
    const auto& tgt = from_i[ar.target];
    for (std::size_t c = 0; c < from_i[ar.source].size(); ++c) {
      const Path longer = *concatenate(from_i[ar.source][c], arrow_path(q, a));
      const std::size_t r = static_cast<std::size_t>(std::find(tgt.begin(), tgt.end(), longer) - tgt.begin());
      for (std::size_t k = 0; k < n; ++k) mat.set(r * n + k, c * n + k, 1);
    }
    as.push_back(ModuleMap::trusted(vs[ar.source], vs[ar.target], mat));
  }
  return Representation(q, m.algebra(), std::move(vs), std::move(as), "el" + vname(q, i) + "(" + m.name() + ")");
}

Representation e_rho(std::size_t i, const Module& m, const Quiver& q) {
  const std::uint32_t p = m.field_char();
  const std::size_t n = m.dim();
  std::vector<std::vector<Path>> to_i(q.vertex_count());
  std::vector<Module> vs;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    to_i[j] = path_set(q, j, i);
    vs.push_back(copies(m, to_i[j].size(), m.name() + "^" + std::to_string(to_i[j].size())));
  }
  std::vector<ModuleMap> as;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto& ar = q.arrows()[a];
    ExactMatrix mat(vs[ar.target].dim(), vs[ar.source].dim(), p);
    const auto& src = to_i[ar.source];
    for (std::size_t r = 0; r < to_i[ar.target].size(); ++r) {
      const Path longer = *concatenate(arrow_path(q, a), to_i[ar.target][r]);
      const std::size_t c = static_cast<std::size_t>(std::find(src.begin(), src.end(), longer) - src.begin());
      for (std::size_t k = 0; k < n; ++k) mat.set(r * n + k, c * n + k, 1);
    }
    as.push_back(ModuleMap::trusted(vs[ar.source], vs[ar.target], mat));
  }
  return Representation(q, m.algebra(), std::move(vs), std::move(as), "er" + vname(q, i) + "(" + m.name() + ")");
}

Representation stalk(std::size_t i, const Module& m, const Quiver& q) {
  std::vector<Module> vs;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) vs.push_back(j == i ? m : zero_over(m.algebra()));
  std::vector<ModuleMap> as;
  for (const auto& a : q.arrows()) as.push_back(ModuleMap::zero(vs[a.source], vs[a.target]));
  return Representation(q, m.algebra(), std::move(vs), std::move(as), "s" + vname(q, i) + "(" + m.name() + ")");
}

ModuleMap e_lambda_to_stalk(std::size_t k, const Module& g, const Quiver& q) {
  const Representation e = e_lambda(k, g, q);
  const Representation s = stalk(k, g, q);
  // Q(k, k) is the trivial path alone, so the copy at vertex k is the first block.
  return ModuleMap(e.module(), s.module(),
                   block_identity(s.total_dim(), e.total_dim(), s.offset(k), e.offset(k), g.dim(), g.field_char()));
}

namespace {

// Counit component e_lambda^k(X_k) -> X: the copy indexed by p goes through X_p.
ModuleMap counit(const Representation& x, std::size_t k) {
  const Representation e = e_lambda(k, x.at(k), x.quiver());
  ExactMatrix mat(x.total_dim(), e.total_dim(), x.lambda().field_char());
  const std::size_t n = x.at(k).dim();
  for (std::size_t j = 0; j < x.quiver().vertex_count(); ++j) {
    const auto ps = path_set(x.quiver(), k, j);
    for (std::size_t c = 0; c < ps.size(); ++c)
      if (n && x.at(j).dim()) mat.set_block(x.offset(j), e.offset(j) + c * n, x.path_map(ps[c]).matrix());
  }
  return ModuleMap(e.module(), x.module(), mat);
}

// Unit component X -> e_rho^k(X_k): the copy indexed by q receives X_q.
ModuleMap unit_map(const Representation& x, std::size_t k) {
  const Representation e = e_rho(k, x.at(k), x.quiver());
  ExactMatrix mat(e.total_dim(), x.total_dim(), x.lambda().field_char());
  const std::size_t n = x.at(k).dim();
  for (std::size_t j = 0; j < x.quiver().vertex_count(); ++j) {
    const auto ps = path_set(x.quiver(), j, k);
    for (std::size_t r = 0; r < ps.size(); ++r)
      if (n && x.at(j).dim()) mat.set_block(e.offset(j) + r * n, x.offset(j), x.path_map(ps[r]).matrix());
  }
  return ModuleMap(x.module(), e.module(), mat);
}

}  // namespace

PhiPsi phi_psi(const Representation& x, std::size_t i) {
  const Quiver& q = x.quiver();
  const Algebra& lam = x.lambda();
  PhiPsi out;
  const auto in = q.arrows_into(i);
  if (in.empty()) {
    out.phi = ModuleMap::zero(zero_over(lam), x.at(i));
  } else {
    std::vector<Module> srcs;
    std::vector<ModuleMap> maps;
    for (auto a : in) {
      srcs.push_back(x.at(q.arrows()[a].source));
      maps.push_back(x.arrow_map(a));
    }
    out.phi = copairing(direct_sum(lam, srcs), maps);
  }
  const auto outs = q.arrows_out_of(i);
  if (outs.empty()) {
    out.psi = ModuleMap::zero(x.at(i), zero_over(lam));
  } else {
    std::vector<Module> tgts;
    std::vector<ModuleMap> maps;
    for (auto a : outs) {
      tgts.push_back(x.at(q.arrows()[a].target));
      maps.push_back(x.arrow_map(a));
    }
    out.psi = pairing(direct_sum(lam, tgts), maps);
  }
  out.c = cokernel(out.phi).module.renamed("c" + vname(q, i) + "(" + x.name() + ")");
  out.k = kernel(out.psi).module.renamed("k" + vname(q, i) + "(" + x.name() + ")");
  return out;
}

std::string to_string(RepClassKind k) {
  switch (k) {
    case RepClassKind::rep: return "Rep";
    case RepClassKind::phi: return "Phi";
    case RepClassKind::psi: return "Psi";
  }
  return "?";
}

Membership class_membership(RepClassKind kind, const ObjectClass& base, const Representation& x) {
  const Quiver& q = x.quiver();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    const std::string at = "vertex " + vname(q, i) + ": ";
    if (kind == RepClassKind::rep) {
      if (!base.contains(x.at(i))) return {false, at + "X_i is not in " + base.name()};
      continue;
    }
    const PhiPsi pp = phi_psi(x, i);
    if (kind == RepClassKind::phi) {
      if (!pp.phi.is_injective()) return {false, at + "phi is not monic"};
      if (!base.contains(pp.c)) return {false, at + "c_i(X) is not in " + base.name()};
    } else {
      if (!pp.psi.is_surjective()) return {false, at + "psi is not epic"};
      if (!base.contains(pp.k)) return {false, at + "k_i(X) is not in " + base.name()};
    }
  }
  return {};
}

std::vector<RepMap> rep_hom_basis(const Representation& x, const Representation& y) {
  if (!same_setting(x, y)) throw MismatchError("rep_hom_basis: representations over different settings");
  std::vector<RepMap> out;
  for (const auto& f : hom_basis(x.module(), y.module())) out.push_back(RepMap::from_module_map(x, y, f));
  return out;
}

std::size_t rep_ext_dim(std::size_t n, const Representation& x, const Representation& y) {
  if (!same_setting(x, y)) throw MismatchError("rep_ext_dim: representations over different settings");
  return ext_dim(n, x.module(), y.module());
}

std::string to_string(AdjunctionVariant v) {
  switch (v) {
    case AdjunctionVariant::e_lambda_left: return "elambda-left";
    case AdjunctionVariant::e_rho_right: return "erho-right";
    case AdjunctionVariant::c_s: return "c-s";
    case AdjunctionVariant::s_k: return "s-k";
  }
  return "?";
}

AdjunctionResult adjunction_check(AdjunctionVariant which, std::size_t i, const Module& y, const Representation& x,
                                  std::size_t m) {
  const Quiver& q = x.quiver();
  AdjunctionResult r;
  switch (which) {
    case AdjunctionVariant::e_lambda_left:
      r.rep_side = rep_ext_dim(m, e_lambda(i, y, q), x);
      r.base_side = ext_dim(m, y, x.at(i));
      break;
    case AdjunctionVariant::e_rho_right:
      r.rep_side = rep_ext_dim(m, x, e_rho(i, y, q));
      r.base_side = ext_dim(m, x.at(i), y);
      break;
    case AdjunctionVariant::c_s: {
      const PhiPsi pp = phi_psi(x, i);
      r.applicable = pp.phi.is_injective();
      r.rep_side = rep_ext_dim(m, x, stalk(i, y, q));
      r.base_side = ext_dim(m, pp.c, y);
      break;
    }
    case AdjunctionVariant::s_k: {
      const PhiPsi pp = phi_psi(x, i);
      r.applicable = pp.psi.is_surjective();
      r.rep_side = rep_ext_dim(m, stalk(i, y, q), x);
      r.base_side = ext_dim(m, y, pp.k);
      break;
    }
  }
  return r;
}

Cor1Result cor1_sequence(const Quiver& q, std::size_t k, const Module& g, const ObjectClass& l,
                         const std::optional<Representation>& x) {
  for (const auto& t : l.generators())
    if (const auto d = ext_dim(1, g, t))
      throw PreconditionError("cor1_sequence: Ext^1(" + g.name() + ", " + t.name() + ") = " + std::to_string(d) +
                              ", so " + g.name() + " is not in lperp1(" + l.name() + ")");
  Cor1Result out;
  const ModuleMap pi = e_lambda_to_stalk(k, g, q);
  const SubmoduleResult ker = kernel(pi);
  out.sequence = {ker.inclusion, pi};
  out.exact = out.sequence.is_valid();
  out.witness.label = "cor1 k=" + vname(q, k) + " G=" + g.name();
  out.witness.claim_short_exact(out.sequence);
  if (x) {
    const PhiPsi pp = phi_psi(*x, k);
    if (!pp.psi.is_surjective()) {
      out.side_condition_failure = "psi at vertex " + vname(q, k) + " is not epic";
    } else if (!l.contains(pp.k)) {
      out.side_condition_failure = "k_" + vname(q, k) + "(X) is not in " + l.name();
    } else {
      const std::vector<ModuleMap> seq{out.sequence.f, out.sequence.g};
      out.hom_exact_against_x = is_hom_acyclic_against(seq, x->module(), Variance::contravariant).acyclic;
      if (*out.hom_exact_against_x)
        out.witness.claim_acyclic(seq, x->module(), Variance::contravariant);
    }
  }
  return out;
}

// ---------------------------------------------------------------- universe

namespace {

std::vector<std::size_t> dim_vector(const Representation& r) {
  std::vector<std::size_t> out;
  for (const auto& m : r.vertex_modules()) out.push_back(m.dim());
  return out;
}

struct UniverseBuilder {
  const Quiver& q;
  const Algebra& lambda;
  const UniverseOptions& opts;
  std::vector<Module> members;
  std::vector<std::vector<std::size_t>> dims;
  std::size_t dropped = 0;
  bool full = false;

  // Adds the indecomposable summands of m; returns the indices of new members.
  std::vector<std::size_t> add(const Module& m, const std::string& name) {
    std::vector<std::size_t> fresh;
    if (m.is_zero()) return fresh;
    const auto parts = split_indecomposables(m).summands;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
      const Module s = parts[pi].renamed(parts.size() == 1 ? name : name + "." + std::to_string(pi + 1));
      const Representation r = Representation::from_module(s, q, lambda);
      auto dv = dim_vector(r);
      if (*std::max_element(dv.begin(), dv.end()) > opts.dim_bound) {
        ++dropped;
        continue;
      }
      bool seen = false;
      for (std::size_t i = 0; i < members.size() && !seen; ++i)
        seen = dims[i] == dv && isomorphism_of_indecomposables(members[i], s).has_value();
      if (seen) continue;
      if (members.size() >= opts.max_size) {
        full = true;
        ++dropped;
        continue;
      }
      members.push_back(s);
      dims.push_back(std::move(dv));
      fresh.push_back(members.size() - 1);
    }
    return fresh;
  }
};

}  // namespace

RepUniverse generate_rep_universe(const CatalogPtr& base, const Quiver& q, const UniverseOptions& opts) {
  if (!q.is_acyclic()) throw PreconditionError("generate_rep_universe: quiver has oriented cycles");
  RepUniverse u;
  u.quiver = q;
  u.lambda = base->algebra();
  u.gamma = rep_algebra(u.lambda, q);
  u.base = base;
  UniverseBuilder b{q, u.lambda, opts, {}, {}, 0, false};

  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    for (const auto& m : base->modules())
      for (const auto& r : {stalk(i, m, q), e_lambda(i, m, q), e_rho(i, m, q)}) {
        auto f = b.add(r.module(), r.name());
        frontier.insert(frontier.end(), f.begin(), f.end());
      }
  bool fixpoint = false;
  for (std::size_t round = 0; round < opts.max_rounds && !b.full; ++round) {
    if (frontier.empty()) {
      fixpoint = true;
      break;
    }
    std::vector<std::size_t> next;
    for (const auto idx : frontier) {
      const Module m = b.members[idx];
      const Representation r = Representation::from_module(m, q, u.lambda);
      const std::string nm = m.name();
      std::vector<std::pair<Module, std::string>> derived{{syzygy(m, 1), "Om(" + nm + ")"},
                                                          {cosyzygy(m, 1), "Omi(" + nm + ")"}};
      for (std::size_t k = 0; k < q.vertex_count(); ++k) {
        if (r.at(k).is_zero()) continue;
        derived.emplace_back(kernel(counit(r, k)).module, "Kc" + vname(q, k) + "(" + nm + ")");
        derived.emplace_back(cokernel(unit_map(r, k)).module, "Cu" + vname(q, k) + "(" + nm + ")");
      }
      for (const auto& [d, dn] : derived) {
        auto f = b.add(d, dn);
        next.insert(next.end(), f.begin(), f.end());
      }
    }
    frontier = std::move(next);
  }
  if (frontier.empty()) fixpoint = true;

  // Unique labels for add{...} expressions and witness text.
  std::map<std::string, std::size_t> used;
  for (std::size_t i = 0; i < b.members.size(); ++i) {
    const std::string nm = b.members[i].name();
    if (used[nm]++) b.members[i] = b.members[i].renamed(nm + "#" + std::to_string(i));
  }
  u.dropped = b.dropped;
  u.closed = fixpoint && b.dropped == 0;
  u.catalog = Catalog::make(u.gamma, std::move(b.members), false, u.gamma.name());
  return u;
}

ObjectClass rep_class(const RepUniverse& u, RepClassKind kind, const ObjectClass& base) {
  const Quiver q = u.quiver;
  const Algebra lam = u.lambda;
  return ObjectClass::from_predicate(u.catalog, to_string(kind) + "(" + base.name() + ")",
                                     [q, lam, kind, base](const Module& m) {
                                       return class_membership(kind, base, Representation::from_module(m, q, lam)).member;
                                     });
}

// ---------------------------------------------------------------- checkers

namespace {

std::optional<std::string> quiver_precondition(const Quiver& q) {
  if (q.is_discrete()) return "quiver " + q.name + " is discrete";
  if (!q.is_acyclic()) return "quiver " + q.name + " has oriented cycles";
  if (!q.is_left_rooted() || !q.is_right_rooted()) return "quiver " + q.name + " is not left and right rooted";
  return std::nullopt;
}

}  // namespace

RepCheckReport check_prop1(const ObjectClass& f, const ObjectClass& l, const RepUniverse& u, const CheckOptions& opts) {
  RepCheckReport out;
  CheckReport& rep = out.report;
  rep.name = "prop1(" + f.name() + ", " + l.name() + ", " + u.quiver.name + ")";
  rep.mode = f.catalog()->complete() ? "exact" : "evidence";
  rep.note("representation universe: " + std::to_string(u.catalog->size()) + " indecomposables, " + u.mode());
  std::optional<std::string> failed = quiver_precondition(u.quiver);
  if (!failed) {
    const BalanceCertificate rb = check_balanced(rep_class(u, RepClassKind::phi, f), rep_class(u, RepClassKind::psi, l), opts);
    rep.add_part(rb.report);
    if (!rb.verdict) failed = "(Phi(" + f.name() + "), Psi(" + l.name() + ")) is not balanced";
  }
  if (failed) {
    out.preconditions = false;
    rep.failed_hypothesis = *failed;
    rep.note("precondition failed: " + *failed);
    return out;
  }
  bool ok = true;
  const BalanceCertificate b = check_balanced(f, l, opts);
  rep.add_part(b.report);
  ok = ok && b.verdict;
  rep.note(std::string("(1) ") + (b.verdict ? "holds" : "fails"));

  const ObjectClass lperp = perp1(l, Side::left);
  const ObjectClass fperp = perp1(f, Side::right);
  const PairReport res = check_resolving(f, opts);
  rep.add_part(res.report);
  if (res.verdict) {
    const bool in = lperp.subset_of(fperp);
    ok = ok && in;
    rep.note(std::string("(2) ") + (in ? "holds" : "fails"));
  } else {
    rep.note("(2) not applicable: " + f.name() + " is not resolving");
  }
  const PairReport cores = check_coresolving(l, opts);
  rep.add_part(cores.report);
  if (cores.verdict) {
    const bool in = fperp.subset_of(lperp);
    ok = ok && in;
    rep.note(std::string("(3) ") + (in ? "holds" : "fails"));
  } else {
    rep.note("(3) not applicable: " + l.name() + " is not coresolving");
  }
  out.verdict = rep.verdict = ok;
  return out;
}

Cor2Result check_cor2(const ObjectClass& f, const ObjectClass& h, const ObjectClass& g, const ObjectClass& l,
                      const RepUniverse& u, const CheckOptions& opts) {
  Cor2Result out;
  CheckReport& rep = out.report;
  rep.name = "cor2(" + f.name() + ", " + h.name() + ", " + g.name() + ", " + l.name() + ", " + u.quiver.name + ")";
  rep.mode = u.mode();
  rep.note("representation universe: " + std::to_string(u.catalog->size()) + " indecomposables, " + u.mode());
  std::optional<std::string> failed = quiver_precondition(u.quiver);
  for (const auto& [y, x] : {std::pair{&f, &h}, std::pair{&g, &l}}) {
    const PairReport p = check_cotorsion_pair(*y, *x);
    rep.add_part(p.report);
    if (!p.verdict) {
      if (!failed) failed = "(" + y->name() + ", " + x->name() + ") is not a cotorsion pair";
      continue;
    }
    const PairReport c = check_complete(*y, *x, opts);
    const PairReport hd = check_hereditary(*y, *x, opts);
    rep.add_part(c.report);
    rep.add_part(hd.report);
    if (!failed && !(c.verdict && hd.verdict))
      failed = "(" + y->name() + ", " + x->name() + ") is not complete and hereditary";
  }
  out.preconditions = !failed;
  if (failed) {
    rep.failed_hypothesis = *failed;
    rep.note("precondition failed: " + *failed);
  }
  out.h_equals_g = h.same_members(g);
  out.rep_balance = check_balanced(rep_class(u, RepClassKind::phi, f), rep_class(u, RepClassKind::psi, l), opts);
  out.rep_balanced = out.rep_balance.verdict;
  out.rep_balance.report.mode = u.mode();
  rep.add_part(out.rep_balance.report);
  rep.note(std::string(out.h_equals_g ? "H = G" : "H != G") + ", " +
           (out.rep_balanced ? "(Phi(F), Psi(L)) balanced" : "(Phi(F), Psi(L)) not balanced"));
  rep.verdict = out.preconditions && out.agree();
  return out;
}

QfResult check_qf(const RepUniverse& u, const CheckOptions& opts) {
  QfResult out;
  CheckReport& rep = out.report;
  rep.name = "qf(" + u.lambda.name() + ", " + u.quiver.name + ")";
  rep.mode = u.mode();
  rep.note("representation universe: " + std::to_string(u.catalog->size()) + " indecomposables, " + u.mode());
  if (const auto failed = quiver_precondition(u.quiver)) {
    rep.failed_hypothesis = *failed;
    rep.note("precondition failed: " + *failed);
    return out;
  }
  const ObjectClass mod = ObjectClass::all(u.base);
  const ObjectClass proj = ObjectClass::projectives(u.base);
  const ObjectClass inj = ObjectClass::injectives(u.base);
  out.qf = proj.same_members(inj);
  rep.note(std::string("Proj ") + (out.qf ? "=" : "!=") + " Inj");
  const ObjectClass phi = rep_class(u, RepClassKind::phi, mod);
  const ObjectClass psi = rep_class(u, RepClassKind::psi, mod);
  BalanceCertificate b = check_balanced(phi, psi, opts);
  out.rep_balanced = b.verdict;
  b.report.mode = u.mode();
  rep.add_part(b.report);
  if (out.qf) {
    const TripletReport t = check_triplet(phi, rep_class(u, RepClassKind::rep, proj), psi, opts);
    out.lifted_triplet = t.verdict();
    rep.add_part(t.report);
    rep.note(std::string("lifted triplet ") + (t.verdict() ? "verified" : "fails"));
  }
  rep.verdict = out.agree();
  return out;
}

}  // namespace cotri
