#include "cotri/homology.hpp"

#include <map>
#include <mutex>

#include "cotri/error.hpp"

namespace cotri {

std::vector<Module> indecomposable_projectives(const Algebra& a) {
  return algebra_memo(a, "projectives", [&] {
    const Module reg = regular_module(a);
    std::vector<Module> out;
    for (std::size_t i = 0; i < a.idempotents().size(); ++i) {
      const Vec& e = a.idempotents()[i];
      std::vector<Vec> cols;
      for (std::size_t j = 0; j < a.dim(); ++j) cols.push_back(a.multiply(a.basis_vector(j), e));
      const ExactMatrix span = column_basis(ExactMatrix::from_columns(a.field_char(), a.dim(), cols));
      out.push_back(submodule(reg, span, "P" + std::to_string(i + 1)).module);
    }
    return out;
  });
}

std::vector<Module> simple_modules(const Algebra& a) {
  return algebra_memo(a, "simples", [&] {
    std::vector<Module> out;
    const auto ps = indecomposable_projectives(a);
    for (std::size_t i = 0; i < ps.size(); ++i)
      out.push_back(quotient(ps[i], radical_basis(ps[i]), "S" + std::to_string(i + 1)).module);
    return out;
  });
}

Module dual_module(const Module& m, const Algebra& target) {
  if (target.dim() != m.algebra().dim() || target.field_char() != m.field_char())
    throw MismatchError("dual_module: target algebra does not match");
  std::vector<ExactMatrix> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  return Module::trusted(target, std::move(acts), "D(" + m.name() + ")");
}

std::vector<Module> indecomposable_injectives(const Algebra& a) {
  return algebra_memo(a, "injectives", [&] {
    std::vector<Module> out;
    const auto ps = indecomposable_projectives(a.opposite());
    for (std::size_t i = 0; i < ps.size(); ++i) out.push_back(dual_module(ps[i], a).renamed("I" + std::to_string(i + 1)));
    return out;
  });
}

namespace {

struct CoverCache {
  std::mutex mutex;
  std::map<std::uint64_t, Cover> covers;
  std::map<std::uint64_t, Cover> envelopes;
  std::map<std::uint64_t, Module> syzygies;
  std::map<std::uint64_t, Module> cosyzygies;
};

CoverCache& cover_cache() {
  static CoverCache c;
  return c;
}

constexpr std::size_t kCoverCacheLimit = 8192;

template <class Map, class Make>
auto cached(Map& map, std::uint64_t key, Make&& make) {
  auto& c = cover_cache();
  {
    std::lock_guard lock(c.mutex);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
  }
  auto v = make();
  std::lock_guard lock(c.mutex);
  if (map.size() >= kCoverCacheLimit) map.clear();
  map.emplace(key, v);
  return v;
}

Cover compute_projective_cover(const Module& m) {
  const Algebra& a = m.algebra();
  const std::uint32_t p = a.field_char();
  const std::size_t n = m.dim();
  const auto ps = indecomposable_projectives(a);
  const auto& idem = a.idempotents();
  Cover out;
  out.multiplicities.assign(idem.size(), 0);
  if (n == 0) {
    out.object = Module::zero(a);
    out.map = ModuleMap::trusted(out.object, m, ExactMatrix(0, 0, p));
    return out;
  }
  // generators of M lifted from a basis of the top M / JM, one block at a time
  ExactMatrix span = radical_basis(m);
  std::size_t span_rank = span.cols();
  std::vector<ModuleMap> maps;
  std::vector<Module> parts;
  const Module reg = regular_module(a);
  for (std::size_t i = 0; i < idem.size(); ++i) {
    const ExactMatrix block = column_basis(m.action_of(idem[i]));
    for (std::size_t c = 0; c < block.cols() && span_rank < n; ++c) {
      const Vec v = block.column(c);
      ExactMatrix trial(n, span.cols() + 1, p);
      trial.set_block(0, 0, span);
      for (std::size_t r = 0; r < n; ++r) trial.set(r, span.cols(), v[r]);
      const std::size_t rk = rank(trial);
      if (rk == span_rank) continue;
      span = std::move(trial);
      span_rank = rk;
      ++out.multiplicities[i];
      // P_i -> M, x |-> x v for x in Lambda e_i
      const Module& pi = ps[i];
      const ExactMatrix incl = [&] {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < a.dim(); ++j) cols.push_back(a.multiply(a.basis_vector(j), idem[i]));
        return column_basis(ExactMatrix::from_columns(p, a.dim(), cols));
      }();
      ExactMatrix f(n, pi.dim(), p);
      for (std::size_t col = 0; col < pi.dim(); ++col) {
        const Vec img = m.action_of(incl.column(col)).apply(v);
        for (std::size_t r = 0; r < n; ++r) f.set(r, col, img[r]);
      }
      parts.push_back(pi);
      maps.push_back(ModuleMap::trusted(pi, m, std::move(f)));
    }
  }
  const Biproduct sum = direct_sum(a, parts);
  out.object = sum.sum;
  out.map = copairing(sum, maps);
  if (!out.map.is_surjective()) throw Error("projective_cover: lifted top does not generate the module");
  return out;
}

}  // namespace

Cover projective_cover(const Module& m) {
  return cached(cover_cache().covers, m.id(), [&] { return compute_projective_cover(m); });
}

Cover injective_envelope(const Module& m) {
  return cached(cover_cache().envelopes, m.id(), [&] {
    const Algebra& a = m.algebra();
    const Module d = dual_module(m, a.opposite());
    const Cover c = projective_cover(d);
    Cover out;
    out.object = dual_module(c.object, a).renamed("I(" + m.name() + ")");
    out.map = ModuleMap::trusted(m, out.object, c.map.matrix().transpose());
    out.multiplicities = c.multiplicities;
    return out;
  });
}

namespace {

Module syzygy_once(const Module& m) {
  return cached(cover_cache().syzygies, m.id(), [&] { return kernel(projective_cover(m).map).module; });
}

Module cosyzygy_once(const Module& m) {
  return cached(cover_cache().cosyzygies, m.id(), [&] { return cokernel(injective_envelope(m).map).module; });
}

}  // namespace

Module syzygy(const Module& m, std::size_t n) {
  Module x = m;
  for (std::size_t k = 0; k < n && x.dim() > 0; ++k) x = syzygy_once(x);
  return x;
}

Module cosyzygy(const Module& m, std::size_t n) {
  Module x = m;
  for (std::size_t k = 0; k < n && x.dim() > 0; ++k) x = cosyzygy_once(x);
  return x;
}

namespace {

std::size_t ext1_via_cover(const Module& x, const Module& n) {
  if (x.dim() == 0 || n.dim() == 0) return 0;
  const Cover c = projective_cover(x);
  const Module k = syzygy_once(x);
  return hom_dim(k, n) + hom_dim(x, n) - hom_dim(c.object, n);
}

std::size_t ext1_via_envelope(const Module& n, const Module& y) {
  if (y.dim() == 0 || n.dim() == 0) return 0;
  const Cover c = injective_envelope(y);
  const Module q = cosyzygy_once(y);
  return hom_dim(n, q) + hom_dim(n, y) - hom_dim(n, c.object);
}

// Indecomposable summand types of x, appended to `types` when new; returns
// the indices (into types) of the summands, or nullopt if splitting was not certified.
std::optional<std::vector<std::size_t>> summand_types(const Module& x, std::vector<Module>& types) {
  const SplitResult s = split_indecomposables(x);
  std::vector<std::size_t> idx;
  for (const auto& piece : s.summands) {
    std::optional<std::size_t> hit;
    for (std::size_t t = 0; t < types.size() && !hit; ++t)
      if (isomorphism_of_indecomposables(piece, types[t])) hit = t;
    if (!hit) {
      hit = types.size();
      types.push_back(piece);
    }
    idx.push_back(*hit);
  }
  if (!s.certified) return std::nullopt;
  return idx;
}

template <class Ext1, class Step>
HigherExtResult vanishing_chain(const Module& start, std::size_t count, Ext1&& ext1, Step&& step, std::size_t bound) {
  HigherExtResult res;
  std::vector<Module> types;
  bool certifiable = true;
  std::size_t known = 0;
  if (auto t = summand_types(start, types); !t) certifiable = false;
  known = types.size();
  Module x = start;
  if (x.dim() == 0) {
    res.proved = true;
    res.certificate = "zero module";
    return res;
  }
  for (std::size_t n = 1; n <= bound; ++n) {
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t e = ext1(x, j);
      if (e != 0) {
        res.vanishes = false;
        res.failure = std::make_tuple(n, j, e);
        res.checked_up_to = n;
        res.certificate = "failure";
        return res;
      }
    }
    res.checked_up_to = n;
    x = step(x);
    if (x.dim() == 0) {
      res.proved = true;
      res.certificate = "syzygy zero at step " + std::to_string(n);
      return res;
    }
    auto t = summand_types(x, types);
    if (!t) certifiable = false;
    if (certifiable && types.size() == known) {
      res.proved = true;
      res.certificate = "summand types repeat at step " + std::to_string(n);
      return res;
    }
    known = types.size();
  }
  res.certificate = "bound " + std::to_string(bound);
  return res;
}

}  // namespace

std::size_t ext_dim(std::size_t n, const Module& m, const Module& n_mod) {
  require_same_algebra(m, n_mod, "ext_dim");
  if (n == 0) return hom_dim(m, n_mod);
  return ext1_via_cover(syzygy(m, n - 1), n_mod);
}

HigherExtResult higher_ext_vanishing(const Module& m, const std::vector<Module>& targets, std::size_t bound) {
  return vanishing_chain(
      m, targets.size(), [&](const Module& x, std::size_t j) { return ext1_via_cover(x, targets[j]); },
      [](const Module& x) { return syzygy_once(x); }, bound);
}

HigherExtResult higher_ext_vanishing_dual(const std::vector<Module>& sources, const Module& m, std::size_t bound) {
  return vanishing_chain(
      m, sources.size(), [&](const Module& y, std::size_t j) { return ext1_via_envelope(sources[j], y); },
      [](const Module& y) { return cosyzygy_once(y); }, bound);
}

ModuleMap canonical_precover(const ObjectClass& f, const Module& m) {
  const Algebra& a = m.algebra();
  std::vector<Module> parts;
  std::vector<ModuleMap> maps;
  for (const auto& g : f.generators())
    for (auto& h : hom_basis(g, m)) {
      parts.push_back(g);
      maps.push_back(std::move(h));
    }
  if (parts.empty()) return ModuleMap::zero(Module::zero(a), m);
  const Biproduct sum = direct_sum(a, parts);
  return copairing(sum, maps);
}

ModuleMap canonical_preenvelope(const ObjectClass& l, const Module& m) {
  const Algebra& a = m.algebra();
  std::vector<Module> parts;
  std::vector<ModuleMap> maps;
  for (const auto& g : l.generators())
    for (auto& h : hom_basis(m, g)) {
      parts.push_back(g);
      maps.push_back(std::move(h));
    }
  if (parts.empty()) return ModuleMap::zero(m, Module::zero(a));
  const Biproduct sum = direct_sum(a, parts);
  return pairing(sum, maps);
}

namespace {

// Rank of the linear map given by the images (as matrices) of a basis.
std::size_t rank_of_images(const std::vector<ExactMatrix>& images, std::uint32_t p) {
  if (images.empty()) return 0;
  const std::size_t len = images.front().entries().size();
  if (len == 0) return 0;
  ExactMatrix m(images.size(), len, p);
  for (std::size_t r = 0; r < images.size(); ++r) {
    auto row = m.row(r);
    std::copy(images[r].entries().begin(), images[r].entries().end(), row.begin());
  }
  return rank(m);
}

}  // namespace

bool is_precover(const ObjectClass& f, const ModuleMap& cover) {
  for (const auto& g : f.generators()) {
    std::vector<ExactMatrix> imgs;
    for (const auto& h : hom_basis(g, cover.source())) imgs.push_back(cover.matrix() * h.matrix());
    if (rank_of_images(imgs, g.field_char()) != hom_dim(g, cover.target())) return false;
  }
  return true;
}

bool is_preenvelope(const ObjectClass& l, const ModuleMap& envelope) {
  for (const auto& g : l.generators()) {
    std::vector<ExactMatrix> imgs;
    for (const auto& h : hom_basis(envelope.target(), g)) imgs.push_back(h.matrix() * envelope.matrix());
    if (rank_of_images(imgs, g.field_char()) != hom_dim(envelope.source(), g)) return false;
  }
  return true;
}

ResolutionComplex class_resolution(const Module& m, const ObjectClass& f, std::size_t length) {
  if (length == 0) throw PreconditionError("class_resolution: length must be at least 1");
  ResolutionComplex rc;
  rc.target = m;
  rc.variance = Variance::covariant;
  rc.class_name = f.name();
  Module current = m;
  ModuleMap into_previous = ModuleMap::identity(m);  // current -> previous term
  for (std::size_t k = 0; k < length; ++k) {
    const ModuleMap pc = canonical_precover(f, current);
    if (!is_precover(f, pc)) throw Error("class_resolution: canonical precover failed its postcondition");
    rc.terms.push_back(pc.source());
    rc.differentials.push_back(compose(into_previous, pc));
    const SubmoduleResult ker = kernel(pc);
    if (ker.module.dim() == 0) break;
    current = ker.module;
    into_previous = ModuleMap::trusted(ker.module, pc.source(), ker.inclusion.matrix());
  }
  return rc;
}

ResolutionComplex class_coresolution(const Module& m, const ObjectClass& l, std::size_t length) {
  if (length == 0) throw PreconditionError("class_coresolution: length must be at least 1");
  ResolutionComplex rc;
  rc.target = m;
  rc.variance = Variance::contravariant;
  rc.class_name = l.name();
  Module current = m;
  ModuleMap from_previous = ModuleMap::identity(m);  // previous term -> current
  for (std::size_t k = 0; k < length; ++k) {
    const ModuleMap pe = canonical_preenvelope(l, current);
    if (!is_preenvelope(l, pe)) throw Error("class_coresolution: canonical preenvelope failed its postcondition");
    rc.terms.push_back(pe.target());
    rc.differentials.push_back(compose(pe, from_previous));
    const QuotientResult cok = cokernel(pe);
    if (cok.module.dim() == 0) break;
    current = cok.module;
    from_previous = ModuleMap::trusted(pe.target(), cok.module, cok.projection.matrix());
  }
  return rc;
}

std::vector<Module> complex_objects(const std::vector<ModuleMap>& maps) {
  std::vector<Module> out;
  if (maps.empty()) return out;
  out.push_back(maps.front().source());
  for (const auto& f : maps) out.push_back(f.target());
  return out;
}

bool is_complex(const std::vector<ModuleMap>& maps) {
  for (std::size_t j = 0; j + 1 < maps.size(); ++j) {
    if (maps[j].target().dim() != maps[j + 1].source().dim()) return false;
    if (!(maps[j + 1].matrix() * maps[j].matrix()).is_zero()) return false;
  }
  return true;
}

AcyclicityResult is_hom_acyclic_against(const std::vector<ModuleMap>& maps, const Module& t, Variance variance) {
  AcyclicityResult res;
  if (!is_complex(maps)) throw PreconditionError("is_hom_acyclic: maps do not form a complex");
  const auto objs = complex_objects(maps);
  const std::size_t k = objs.size();
  if (k == 0) return res;
  const std::uint32_t p = t.field_char();
  std::vector<std::size_t> dims(k), ranks(maps.size());
  if (variance == Variance::covariant) {
    std::vector<std::vector<ModuleMap>> hs(k);
    for (std::size_t j = 0; j < k; ++j) {
      hs[j] = hom_basis(t, objs[j]);
      dims[j] = hs[j].size();
    }
    for (std::size_t j = 0; j < maps.size(); ++j) {
      std::vector<ExactMatrix> imgs;
      for (const auto& h : hs[j]) imgs.push_back(maps[j].matrix() * h.matrix());
      ranks[j] = rank_of_images(imgs, p);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t ker = dims[j] - (j < maps.size() ? ranks[j] : 0);
      const std::size_t im = j > 0 ? ranks[j - 1] : 0;
      if (ker != im) {
        res.acyclic = false;
        res.position = j;
        res.detail = "Hom(T, -) not exact at position " + std::to_string(j) + ": kernel dim " + std::to_string(ker) +
                     ", image dim " + std::to_string(im);
        return res;
      }
    }
  } else {
    std::vector<std::vector<ModuleMap>> hs(k);
    for (std::size_t j = 0; j < k; ++j) {
      hs[j] = hom_basis(objs[j], t);
      dims[j] = hs[j].size();
    }
    // ranks[j]: rank of Hom(X_{j+1}, T) -> Hom(X_j, T)
    for (std::size_t j = 0; j < maps.size(); ++j) {
      std::vector<ExactMatrix> imgs;
      for (const auto& h : hs[j + 1]) imgs.push_back(h.matrix() * maps[j].matrix());
      ranks[j] = rank_of_images(imgs, p);
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t ker = dims[j] - (j > 0 ? ranks[j - 1] : 0);
      const std::size_t im = j < maps.size() ? ranks[j] : 0;
      if (ker != im) {
        res.acyclic = false;
        res.position = j;
        res.detail = "Hom(-, T) not exact at position " + std::to_string(j) + ": kernel dim " + std::to_string(ker) +
                     ", image dim " + std::to_string(im);
        return res;
      }
    }
  }
  return res;
}

AcyclicityResult is_hom_acyclic(const std::vector<ModuleMap>& maps, const ObjectClass& t, Variance variance) {
  for (auto i : t.members()) {
    AcyclicityResult r = is_hom_acyclic_against(maps, t.catalog()->module(i), variance);
    if (!r.acyclic) {
      r.generator = i;
      r.detail = t.catalog()->label(i) + ": " + r.detail;
      return r;
    }
  }
  return {};
}

bool is_left_exact(const ModuleMap& k_to_f, const ModuleMap& f_to_m, bool strict) {
  if (k_to_f.target().dim() != f_to_m.source().dim()) return false;
  if (!(f_to_m.matrix() * k_to_f.matrix()).is_zero()) return false;
  if (!k_to_f.is_injective()) return false;
  if (k_to_f.rank() + f_to_m.rank() != f_to_m.source().dim()) return false;
  return !strict || f_to_m.is_surjective();
}

bool is_right_exact(const ModuleMap& m_to_l, const ModuleMap& l_to_c, bool strict) {
  if (m_to_l.target().dim() != l_to_c.source().dim()) return false;
  if (!(l_to_c.matrix() * m_to_l.matrix()).is_zero()) return false;
  if (!l_to_c.is_surjective()) return false;
  if (m_to_l.rank() + l_to_c.rank() != l_to_c.source().dim()) return false;
  return !strict || m_to_l.is_injective();
}

}  // namespace cotri
