#include "cotri/report.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "cotri/error.hpp"

namespace cotri {

namespace {

const std::map<ClaimKind, std::string>& kind_names() {
  static const std::map<ClaimKind, std::string> names = {
      {ClaimKind::short_exact, "short_exact"},
      {ClaimKind::left_exact, "left_exact"},
      {ClaimKind::right_exact, "right_exact"},
      {ClaimKind::complex, "complex"},
      {ClaimKind::commutes, "commutes"},
      {ClaimKind::member, "member"},
      {ClaimKind::nonmember, "nonmember"},
      {ClaimKind::dim, "dim"},
      {ClaimKind::hom_dim, "hom_dim"},
      {ClaimKind::ext_dim, "ext_dim"},
      {ClaimKind::acyclic, "acyclic"},
      {ClaimKind::not_acyclic, "not_acyclic"},
      {ClaimKind::isomorphic, "isomorphic"},
      {ClaimKind::not_isomorphic, "not_isomorphic"},
      {ClaimKind::injective, "injective"},
      {ClaimKind::not_injective, "not_injective"},
      {ClaimKind::surjective, "surjective"},
      {ClaimKind::not_surjective, "not_surjective"},
  };
  return names;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ' ' || c == '\t' || c == '\n') c = '_';
  return s.empty() ? "-" : s;
}

}  // namespace

std::string to_string(ClaimKind k) { return kind_names().at(k); }

std::optional<ClaimKind> claim_kind_from_string(const std::string& s) {
  for (const auto& [k, n] : kind_names())
    if (n == s) return k;
  return std::nullopt;
}

std::size_t Witness::add_module(const Module& m) {
  for (std::size_t i = 0; i < modules.size(); ++i)
    if (modules[i].id() == m.id() && modules[i].algebra() == m.algebra()) return i;
  modules.push_back(m);
  return modules.size() - 1;
}

std::size_t Witness::add_map(const ModuleMap& f) {
  const std::size_t s = add_module(f.source());
  const std::size_t t = add_module(f.target());
  maps.push_back(f);
  map_ends.emplace_back(s, t);
  return maps.size() - 1;
}

void Witness::claim_short_exact(const ShortExactSequence& s) {
  claims.push_back({ClaimKind::short_exact, {add_map(s.f), add_map(s.g)}, {}, 0, 0, false});
}

void Witness::claim_left_exact(const ModuleMap& f, const ModuleMap& g, bool strict) {
  claims.push_back({ClaimKind::left_exact, {add_map(f), add_map(g)}, {}, 0, 0, strict});
}

void Witness::claim_right_exact(const ModuleMap& f, const ModuleMap& g, bool strict) {
  claims.push_back({ClaimKind::right_exact, {add_map(f), add_map(g)}, {}, 0, 0, strict});
}

void Witness::claim_member(const Module& m, const std::string& cls, bool member) {
  claims.push_back({member ? ClaimKind::member : ClaimKind::nonmember, {add_module(m)}, cls, 0, 0, false});
}

void Witness::claim_dim(const Module& m, std::size_t d) {
  claims.push_back({ClaimKind::dim, {add_module(m)}, {}, d, 0, false});
}

void Witness::claim_hom_dim(const Module& a, const Module& b, std::size_t d) {
  claims.push_back({ClaimKind::hom_dim, {add_module(a), add_module(b)}, {}, d, 0, false});
}

void Witness::claim_ext_dim(std::size_t n, const Module& a, const Module& b, std::size_t d) {
  claims.push_back({ClaimKind::ext_dim, {add_module(a), add_module(b)}, {}, n, d, false});
}

void Witness::claim_acyclic(const std::vector<ModuleMap>& ms, const Module& t, Variance v) {
  Claim c{ClaimKind::acyclic, {}, {}, 0, 0, v == Variance::contravariant};
  for (const auto& f : ms) c.args.push_back(add_map(f));
  c.args.push_back(add_module(t));
  claims.push_back(std::move(c));
}

void Witness::claim_not_acyclic(const std::vector<ModuleMap>& ms, const Module& t, Variance v, std::size_t position) {
  Claim c{ClaimKind::not_acyclic, {}, {}, position, 0, v == Variance::contravariant};
  for (const auto& f : ms) c.args.push_back(add_map(f));
  c.args.push_back(add_module(t));
  claims.push_back(std::move(c));
}

void Witness::claim_isomorphic(const Module& a, const Module& b, bool iso) {
  claims.push_back({iso ? ClaimKind::isomorphic : ClaimKind::not_isomorphic, {add_module(a), add_module(b)}, {}, 0, 0,
                    false});
}

void Witness::claim_injective(const ModuleMap& f, bool value) {
  claims.push_back({value ? ClaimKind::injective : ClaimKind::not_injective, {add_map(f)}, {}, 0, 0, false});
}

void Witness::claim_surjective(const ModuleMap& f, bool value) {
  claims.push_back({value ? ClaimKind::surjective : ClaimKind::not_surjective, {add_map(f)}, {}, 0, 0, false});
}

void Witness::claim_commutes(const ModuleMap& a, const ModuleMap& b, const ModuleMap& c, const ModuleMap& d) {
  claims.push_back({ClaimKind::commutes, {add_map(a), add_map(b), add_map(c), add_map(d)}, {}, 0, 0, false});
}

namespace {

std::optional<std::string> check_claim(const Witness& w, const Claim& c, const ClassResolver& classes) {
  auto mod = [&](std::size_t k) -> const Module& { return w.modules.at(c.args.at(k)); };
  auto map = [&](std::size_t k) -> const ModuleMap& { return w.maps.at(c.args.at(k)); };
  auto fail = [&](const std::string& why) { return std::optional<std::string>(to_string(c.kind) + ": " + why); };
  // maps must be module homomorphisms between the recorded ends
  auto valid_map = [&](std::size_t k) -> std::optional<std::string> {
    try {
      map(k).validate();
    } catch (const Error& e) {
      return fail(std::string("map is not a homomorphism: ") + e.what());
    }
    return std::nullopt;
  };
  switch (c.kind) {
    case ClaimKind::short_exact: {
      for (std::size_t k = 0; k < 2; ++k)
        if (auto e = valid_map(k)) return e;
      ShortExactSequence s{map(0), map(1)};
      if (auto v = s.violation()) return fail(*v);
      return std::nullopt;
    }
    case ClaimKind::left_exact:
    case ClaimKind::right_exact: {
      for (std::size_t k = 0; k < 2; ++k)
        if (auto e = valid_map(k)) return e;
      const bool ok = c.kind == ClaimKind::left_exact ? is_left_exact(map(0), map(1), c.flag)
                                                      : is_right_exact(map(0), map(1), c.flag);
      if (!ok) return fail("sequence is not exact in the required sense");
      return std::nullopt;
    }
    case ClaimKind::complex:
    case ClaimKind::acyclic:
    case ClaimKind::not_acyclic: {
      const std::size_t nmaps = c.kind == ClaimKind::complex ? c.args.size() : c.args.size() - 1;
      std::vector<ModuleMap> ms;
      for (std::size_t k = 0; k < nmaps; ++k) {
        if (auto e = valid_map(k)) return e;
        ms.push_back(map(k));
      }
      if (!is_complex(ms)) return fail("maps do not form a complex");
      if (c.kind == ClaimKind::complex) return std::nullopt;
      const Variance v = c.flag ? Variance::contravariant : Variance::covariant;
      const AcyclicityResult r = is_hom_acyclic_against(ms, mod(nmaps), v);
      if (c.kind == ClaimKind::acyclic && !r.acyclic) return fail(r.detail);
      if (c.kind == ClaimKind::not_acyclic) {
        if (r.acyclic) return fail("complex is acyclic");
        if (*r.position != c.value)
          return fail("failure at position " + std::to_string(*r.position) + ", recorded " + std::to_string(c.value));
      }
      return std::nullopt;
    }
    case ClaimKind::commutes: {
      for (std::size_t k = 0; k < 4; ++k)
        if (auto e = valid_map(k)) return e;
      if (!(map(1).matrix() * map(0).matrix() == map(3).matrix() * map(2).matrix())) return fail("square does not commute");
      return std::nullopt;
    }
    case ClaimKind::member:
    case ClaimKind::nonmember: {
      const auto r = classes(c.class_expr, mod(0));
      if (!r) return fail("unknown class '" + c.class_expr + "'");
      if (*r != (c.kind == ClaimKind::member))
        return fail(mod(0).name() + (*r ? " is in " : " is not in ") + c.class_expr);
      return std::nullopt;
    }
    case ClaimKind::dim:
      if (mod(0).dim() != c.value) return fail("dimension " + std::to_string(mod(0).dim()));
      return std::nullopt;
    case ClaimKind::hom_dim: {
      const std::size_t d = hom_dim(mod(0), mod(1));
      if (d != c.value) return fail("dim Hom = " + std::to_string(d) + ", recorded " + std::to_string(c.value));
      return std::nullopt;
    }
    case ClaimKind::ext_dim: {
      const std::size_t d = ext_dim(c.value, mod(0), mod(1));
      if (d != c.extra) return fail("dim Ext = " + std::to_string(d) + ", recorded " + std::to_string(c.extra));
      return std::nullopt;
    }
    case ClaimKind::isomorphic:
    case ClaimKind::not_isomorphic: {
      const IsoResult r = is_isomorphic(mod(0), mod(1));
      if (r.status == IsoStatus::inconclusive) return fail("isomorphism test inconclusive");
      if ((r.status == IsoStatus::isomorphic) != (c.kind == ClaimKind::isomorphic)) return fail("wrong isomorphism status");
      return std::nullopt;
    }
    case ClaimKind::injective:
    case ClaimKind::not_injective:
      if (auto e = valid_map(0)) return e;
      if (map(0).is_injective() != (c.kind == ClaimKind::injective)) return fail("wrong injectivity");
      return std::nullopt;
    case ClaimKind::surjective:
    case ClaimKind::not_surjective:
      if (auto e = valid_map(0)) return e;
      if (map(0).is_surjective() != (c.kind == ClaimKind::surjective)) return fail("wrong surjectivity");
      return std::nullopt;
  }
  return fail("unknown claim");
}

}  // namespace

std::optional<std::string> verify_witness(const Witness& w, const ClassResolver& classes) {
  for (std::size_t k = 0; k < w.maps.size(); ++k) {
    const auto [s, t] = w.map_ends[k];
    if (w.maps[k].source().dim() != w.modules.at(s).dim() || w.maps[k].target().dim() != w.modules.at(t).dim())
      return "map " + std::to_string(k) + " does not join its recorded modules";
  }
  for (const auto& c : w.claims) {
    try {
      if (auto e = check_claim(w, c, classes)) return w.label + ": " + *e;
    } catch (const Error& e) {
      return w.label + ": " + to_string(c.kind) + " raised " + e.what();
    }
  }
  return std::nullopt;
}

std::size_t CheckReport::witness_count() const {
  std::size_t n = witnesses.size() + counterexamples.size();
  for (const auto& p : parts) n += p.witness_count();
  return n;
}

std::vector<std::string> replay_report(const CheckReport& r, const ClassResolver& classes) {
  std::vector<std::string> out;
  for (const auto* list : {&r.witnesses, &r.counterexamples})
    for (const auto& w : *list)
      if (auto e = verify_witness(w, classes)) out.push_back(r.name + ": " + *e);
  for (const auto& p : r.parts) {
    auto sub = replay_report(p, classes);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string matrix_to_text(const ExactMatrix& m) {
  std::ostringstream s;
  s << m.rows() << "x" << m.cols() << ":";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s << "/";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s << ",";
      s << m.at(r, c);
    }
  }
  return s.str();
}

ExactMatrix matrix_from_text(const std::string& text, std::uint32_t p) {
  const auto colon = text.find(':');
  const auto x = text.find('x');
  if (colon == std::string::npos || x == std::string::npos || x > colon) throw Error("malformed matrix '" + text + "'");
  const std::size_t rows = std::stoul(text.substr(0, x));
  const std::size_t cols = std::stoul(text.substr(x + 1, colon - x - 1));
  ExactMatrix m(rows, cols, p);
  std::size_t r = 0, c = 0;
  std::string num;
  auto flush = [&] {
    if (num.empty()) return;
    if (r >= rows || c >= cols) throw Error("matrix entries exceed the declared shape");
    m.set(r, c, std::stoll(num));
    num.clear();
    ++c;
  };
  for (std::size_t i = colon + 1; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == ',') {
      flush();
    } else if (ch == '/') {
      flush();
      if (c != cols) throw Error("matrix row has the wrong length");
      ++r;
      c = 0;
    } else {
      num += ch;
    }
  }
  flush();
  if (rows > 0 && (r != rows - 1 || c != cols)) throw Error("matrix has the wrong number of entries");
  return m;
}

void write_witness(std::ostream& out, const Witness& w, const std::string& indent) {
  out << indent << "witness " << w.label << "\n";
  for (std::size_t i = 0; i < w.modules.size(); ++i) {
    const Module& m = w.modules[i];
    out << indent << "  module " << i << " algebra=" << sanitize(m.algebra().name()) << " dim=" << m.dim()
        << " name=" << sanitize(m.name()) << "\n";
    for (std::size_t a = 0; a < m.actions().size(); ++a)
      if (!m.action(a).is_zero()) out << indent << "    act " << a << " " << matrix_to_text(m.action(a)) << "\n";
  }
  for (std::size_t k = 0; k < w.maps.size(); ++k)
    out << indent << "  map " << k << " " << w.map_ends[k].first << " " << w.map_ends[k].second << " "
        << matrix_to_text(w.maps[k].matrix()) << "\n";
  for (const auto& c : w.claims) {
    out << indent << "  claim " << to_string(c.kind) << " args=";
    for (std::size_t i = 0; i < c.args.size(); ++i) out << (i ? "," : "") << c.args[i];
    if (c.args.empty()) out << "-";
    out << " class=" << sanitize(c.class_expr) << " value=" << c.value << " extra=" << c.extra
        << " flag=" << (c.flag ? 1 : 0) << "\n";
  }
  out << indent << "end witness\n";
}

namespace {

std::map<std::string, std::string> key_values(std::istringstream& in) {
  std::map<std::string, std::string> kv;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::string unsanitize(const std::string& s) { return s == "-" ? std::string() : s; }

}  // namespace

Witness read_witness(std::istream& in, const std::string& header, const AlgebraResolver& algebras) {
  Witness w;
  {
    std::istringstream h(header);
    std::string word;
    h >> word;
    std::getline(h, w.label);
    if (!w.label.empty() && w.label.front() == ' ') w.label.erase(0, 1);
  }
  struct PendingModule {
    Algebra algebra;
    std::size_t dim = 0;
    std::string name;
    std::vector<ExactMatrix> actions;
  };
  std::vector<PendingModule> pending;
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> raw_maps;
  bool modules_built = false;
  auto build_modules = [&] {
    if (modules_built) return;
    modules_built = true;
    for (auto& pm : pending) w.modules.push_back(Module(pm.algebra, std::move(pm.actions), pm.name));
  };
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word.empty()) continue;
    if (word == "end") {
      build_modules();
      for (auto& [s, t, text] : raw_maps) {
        const Module& src = w.modules.at(s);
        const Module& tgt = w.modules.at(t);
        w.maps.push_back(ModuleMap(src, tgt, matrix_from_text(text, src.field_char())));
        w.map_ends.emplace_back(s, t);
      }
      return w;
    }
    if (word == "module") {
      std::size_t idx;
      ls >> idx;
      if (idx != pending.size()) throw Error("witness: modules out of order");
      auto kv = key_values(ls);
      auto alg = algebras(kv["algebra"]);
      if (!alg) throw Error("witness: unknown algebra '" + kv["algebra"] + "'");
      PendingModule pm;
      pm.algebra = *alg;
      pm.dim = std::stoul(kv["dim"]);
      pm.name = unsanitize(kv["name"]);
      pm.actions.assign(alg->dim(), ExactMatrix(pm.dim, pm.dim, alg->field_char()));
      pending.push_back(std::move(pm));
    } else if (word == "act") {
      std::size_t a;
      std::string text;
      ls >> a >> text;
      if (pending.empty()) throw Error("witness: action before module");
      auto& pm = pending.back();
      pm.actions.at(a) = matrix_from_text(text, pm.algebra.field_char());
    } else if (word == "map") {
      std::size_t k, s, t;
      std::string text;
      ls >> k >> s >> t >> text;
      raw_maps.emplace_back(s, t, text);
    } else if (word == "claim") {
      std::string kind;
      ls >> kind;
      auto ck = claim_kind_from_string(kind);
      if (!ck) throw Error("witness: unknown claim kind '" + kind + "'");
      auto kv = key_values(ls);
      Claim c;
      c.kind = *ck;
      if (kv["args"] != "-") {
        std::istringstream as(kv["args"]);
        std::string a;
        while (std::getline(as, a, ',')) c.args.push_back(std::stoul(a));
      }
      c.class_expr = unsanitize(kv["class"]);
      c.value = std::stoul(kv["value"]);
      c.extra = std::stoul(kv["extra"]);
      c.flag = kv["flag"] == "1";
      w.claims.push_back(std::move(c));
    } else {
      throw Error("witness: unexpected line '" + line + "'");
    }
  }
  throw Error("witness: missing 'end witness'");
}

void write_report(std::ostream& out, const CheckReport& r, const std::string& indent) {
  out << indent << "check " << r.name << "\n";
  out << indent << "  verdict " << (r.verdict ? "pass" : "fail") << "\n";
  out << indent << "  mode " << r.mode << "\n";
  if (!r.certificate.empty()) out << indent << "  certificate " << r.certificate << "\n";
  if (r.failed_hypothesis) out << indent << "  failed_hypothesis " << *r.failed_hypothesis << "\n";
  for (const auto& n : r.notes) out << indent << "  note " << n << "\n";
  for (const auto& w : r.witnesses) write_witness(out, w, indent + "  ");
  for (const auto& w : r.counterexamples) {
    out << indent << "  counterexample\n";
    write_witness(out, w, indent + "  ");
  }
  for (const auto& p : r.parts) write_report(out, p, indent + "  ");
  out << indent << "end check\n";
}

}  // namespace cotri
