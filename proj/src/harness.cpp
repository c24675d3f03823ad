#include "cotri/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "cotri/balance.hpp"
#include "cotri/builtins.hpp"
#include "cotri/homology.hpp"
#include "cotri/quiverrep.hpp"

namespace cotri {

// ---------------------------------------------------------------- enumeration

namespace {

bool satisfies_module_axioms(const Algebra& a, const std::vector<ExactMatrix>& acts) {
  const std::size_t d = a.dim(), n = acts.front().rows();
  const std::uint32_t p = a.field_char();
  ExactMatrix u(n, n, p);
  for (std::size_t k = 0; k < d; ++k)
    if (a.unit()[k]) u.add_scaled(a.unit()[k], acts[k]);
  if (!u.is_identity()) return false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ExactMatrix rhs(n, n, p);
      for (std::size_t k = 0; k < d; ++k)
        if (const auto c = a.constant(i, j, k)) rhs.add_scaled(c, acts[k]);
      if (!(acts[i] * acts[j] == rhs)) return false;
    }
  return true;
}

}  // namespace

std::vector<Module> enumerate_indecomposables(const Algebra& a, std::size_t dim_bound, std::uint64_t budget) {
  const std::uint32_t p = a.field_char();
  const std::size_t d = a.dim();
  double total = 0;
  for (std::size_t n = 1; n <= dim_bound; ++n) total += std::pow(double(p), double(n * n * d));
  if (total > double(budget))
    throw BudgetError("enumerate_indecomposables: " + std::to_string(static_cast<unsigned long long>(total)) +
                      " action tuples exceed the budget; use a declared catalog instead");
  std::vector<Module> found;
  for (std::size_t n = 1; n <= dim_bound; ++n) {
    const std::size_t entries = n * n * d;
    std::vector<Residue> digits(entries, 0);
    while (true) {
      std::vector<ExactMatrix> acts(d, ExactMatrix(n, n, p));
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) acts[k].set(r, c, digits[(k * n + r) * n + c]);
      if (satisfies_module_axioms(a, acts)) {
        const Module m = Module::trusted(a, std::move(acts));
        const auto indec = is_indecomposable_exhaustive(m, budget);
        if (!indec) throw BudgetError("enumerate_indecomposables: endomorphism ring too large to search");
        if (*indec) {
          bool seen = false;
          for (const auto& f : found)
            if (f.dim() == n && isomorphism_of_indecomposables(f, m)) {
              seen = true;
              break;
            }
          if (!seen) found.push_back(m.renamed("E" + std::to_string(found.size() + 1)));
        }
      }
      std::size_t i = 0;
      while (i < entries && ++digits[i] == p) digits[i++] = 0;
      if (i == entries) break;
    }
  }
  return found;
}

// ---------------------------------------------------------------- parsing

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

struct Signature {
  std::string args;  // C class, M module label, V vertex name
  bool quiver = false;
};

const std::map<std::string, Signature>& signatures() {
  static const std::map<std::string, Signature> table{
      {"ext", {"MM", false}},
      {"catalog", {"", false}},
      {"pair", {"CC", false}},
      {"complete", {"CC", false}},
      {"hereditary", {"CC", false}},
      {"resolving", {"C", false}},
      {"coresolving", {"C", false}},
      {"triplet", {"CCC", false}},
      {"projectives", {"CCC", false}},
      {"balanced", {"CC", false}},
      {"admissible", {"CC", false}},
      {"intersections", {"CCCC", false}},
      {"smd", {"CCC", false}},
      {"triplet_balance", {"CCC", false}},
      {"balance_triplet", {"CC", false}},
      {"equivalence", {"CCCC", false}},
      {"universe", {"", true}},
      {"adjunction", {"", true}},
      {"cor1", {"VMC", true}},
      {"prop1", {"CC", true}},
      {"cor2", {"CCCC", true}},
      {"qf", {"", true}},
  };
  return table;
}

struct LineReader {
  std::istream& in;
  std::string source;
  std::size_t line = 0;
  std::string text;

  // Next non-empty line with comments removed, split into words.
  std::optional<std::vector<std::string>> next() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      text += raw;
      text += '\n';
      auto w = words(strip_comment(raw));
      if (!w.empty()) return w;
    }
    return std::nullopt;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line, what); }
};

std::map<std::string, std::string> key_values(const std::vector<std::string>& w, std::size_t from, LineReader& r) {
  std::map<std::string, std::string> out;
  for (std::size_t i = from; i < w.size(); ++i) {
    const auto eq = w[i].find('=');
    if (eq == std::string::npos || eq == 0) r.fail("expected key=value, got '" + w[i] + "'");
    out[w[i].substr(0, eq)] = w[i].substr(eq + 1);
  }
  return out;
}

std::uint32_t parse_p(const std::map<std::string, std::string>& kv, LineReader& r) {
  auto it = kv.find("p");
  if (it == kv.end()) return 2;
  try {
    const auto p = std::stoul(it->second);
    if (!is_prime(p)) r.fail("p=" + it->second + " is not prime");
    return static_cast<std::uint32_t>(p);
  } catch (const std::logic_error&) {
    r.fail("bad p=" + it->second);
  }
}

Quiver parse_quiver_block(LineReader& r, const std::string& name) {
  std::vector<std::string> vertices;
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  while (true) {
    auto w = r.next();
    if (!w) r.fail("unterminated quiver block");
    if ((*w)[0] == "end") break;
    if ((*w)[0] == "vertex") {
      vertices.insert(vertices.end(), w->begin() + 1, w->end());
    } else if ((*w)[0] == "arrow" && w->size() == 4) {
      arrows.emplace_back((*w)[1], (*w)[2], (*w)[3]);
    } else {
      r.fail("expected 'vertex ...' or 'arrow LABEL SOURCE TARGET'");
    }
  }
  std::vector<Arrow> as;
  for (const auto& [label, s, t] : arrows) {
    const auto si = std::find(vertices.begin(), vertices.end(), s), ti = std::find(vertices.begin(), vertices.end(), t);
    if (si == vertices.end() || ti == vertices.end()) r.fail("arrow " + label + " joins unknown vertices");
    as.push_back({label, static_cast<std::size_t>(si - vertices.begin()), static_cast<std::size_t>(ti - vertices.begin())});
  }
  Quiver q(vertices, as);
  q.name = name;
  return q;
}

Algebra parse_path_algebra(LineReader& r, const std::string& name, std::uint32_t p) {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<PathRelation> relations;
  while (true) {
    auto w = r.next();
    if (!w) r.fail("unterminated algebra block");
    const std::string& head = (*w)[0];
    if (head == "end") break;
    if (head == "vertex") {
      vertices.insert(vertices.end(), w->begin() + 1, w->end());
    } else if (head == "arrow" && w->size() == 4) {
      const auto si = std::find(vertices.begin(), vertices.end(), (*w)[2]);
      const auto ti = std::find(vertices.begin(), vertices.end(), (*w)[3]);
      if (si == vertices.end() || ti == vertices.end()) r.fail("arrow joins unknown vertices");
      arrows.push_back({(*w)[1], static_cast<std::size_t>(si - vertices.begin()),
                        static_cast<std::size_t>(ti - vertices.begin())});
    } else if (head == "relation") {
      // Terms "[c*]a.b.c" joined by + or -; arrows listed in traversal order.
      PathRelation rel;
      long long sign = 1;
      for (std::size_t i = 1; i < w->size(); ++i) {
        const std::string& t = (*w)[i];
        if (t == "+" || t == "-") {
          sign = t == "-" ? -1 : 1;
          continue;
        }
        PathTerm term;
        std::string body = t;
        if (const auto star = t.find('*'); star != std::string::npos) {
          try {
            term.coefficient = std::stoll(t.substr(0, star));
          } catch (const std::logic_error&) {
            r.fail("bad coefficient in '" + t + "'");
          }
          body = t.substr(star + 1);
        }
        term.coefficient *= sign;
        sign = 1;
        std::istringstream parts(body);
        for (std::string a; std::getline(parts, a, '.');) term.arrows.push_back(a);
        rel.push_back(std::move(term));
      }
      if (rel.empty()) r.fail("empty relation");
      relations.push_back(std::move(rel));
    } else {
      r.fail("expected vertex, arrow or relation");
    }
  }
  Quiver q(vertices, arrows);
  q.name = name;
  return make_path_algebra(q, relations, p, 8, name);
}

Algebra parse_constants_algebra(LineReader& r, const std::string& name, std::uint32_t p) {
  Algebra::Spec s;
  s.p = p;
  s.name = name;
  std::vector<std::tuple<std::string, std::string, std::vector<long long>>> products;
  auto vec = [&](const std::vector<std::string>& w, std::size_t from) {
    Vec v;
    for (std::size_t i = from; i < w.size(); ++i) {
      try {
        const long long x = std::stoll(w[i]);
        v.push_back(static_cast<Residue>(((x % p) + p) % p));
      } catch (const std::logic_error&) {
        r.fail("bad coefficient '" + w[i] + "'");
      }
    }
    if (v.size() != s.labels.size()) r.fail("expected " + std::to_string(s.labels.size()) + " coefficients");
    return v;
  };
  auto index = [&](const std::string& l) {
    const auto it = std::find(s.labels.begin(), s.labels.end(), l);
    if (it == s.labels.end()) r.fail("unknown basis label '" + l + "'");
    return static_cast<std::size_t>(it - s.labels.begin());
  };
  while (true) {
    auto w = r.next();
    if (!w) r.fail("unterminated algebra block");
    const std::string& head = (*w)[0];
    if (head == "end") break;
    if (head == "labels") {
      s.labels.assign(w->begin() + 1, w->end());
      const std::size_t d = s.labels.size();
      s.constants.assign(d * d * d, 0);
    } else if (s.labels.empty()) {
      r.fail("'labels' must come first");
    } else if (head == "unit") {
      s.unit = vec(*w, 1);
    } else if (head == "product") {
      if (w->size() < 4 || (*w)[3] != "=") r.fail("expected 'product A B = c...'");
      const std::size_t i = index((*w)[1]), j = index((*w)[2]), d = s.labels.size();
      const Vec c = vec(*w, 4);
      for (std::size_t k = 0; k < d; ++k) s.constants[(i * d + j) * d + k] = c[k];
    } else if (head == "idempotent") {
      s.idempotents.push_back(vec(*w, 1));
    } else if (head == "radical") {
      s.radical.push_back(vec(*w, 1));
    } else if (head == "generator") {
      s.generators.push_back(vec(*w, 1));
    } else {
      r.fail("unknown line in constants block: " + head);
    }
  }
  if (s.unit.empty()) r.fail("constants algebra needs a unit");
  try {
    return Algebra(std::move(s));
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

std::vector<Module> parse_module_block(LineReader& r, const Algebra& a) {
  std::vector<Module> out;
  std::optional<std::string> name;
  std::map<std::string, ExactMatrix> acts;
  auto flush = [&]() {
    if (!name) return;
    std::size_t n = 0;
    if (!acts.empty()) n = acts.begin()->second.rows();
    std::vector<ExactMatrix> full;
    for (const auto& l : a.labels()) {
      auto it = acts.find(l);
      full.push_back(it == acts.end() ? ExactMatrix(n, n, a.field_char()) : it->second);
    }
    try {
      out.emplace_back(a, std::move(full), *name);
    } catch (const Error& e) {
      r.fail("module " + *name + ": " + e.what());
    }
    name.reset();
    acts.clear();
  };
  while (true) {
    auto w = r.next();
    if (!w) r.fail("unterminated catalog block");
    const std::string& head = (*w)[0];
    if (head == "end") {
      flush();
      break;
    }
    if (head == "module" && w->size() == 2) {
      flush();
      name = (*w)[1];
    } else if (head == "act" && w->size() == 3 && name) {
      if (std::find(a.labels().begin(), a.labels().end(), (*w)[1]) == a.labels().end())
        r.fail("unknown basis label '" + (*w)[1] + "'");
      try {
        acts[(*w)[1]] = matrix_from_text((*w)[2], a.field_char());
      } catch (const Error& e) {
        r.fail(e.what());
      }
    } else {
      r.fail("expected 'module NAME', 'act LABEL MATRIX' or 'end'");
    }
  }
  return out;
}

Expectation parse_expectation(const std::vector<std::string>& w, std::size_t from, LineReader& r) {
  if (from >= w.size() || (w[from] != "pass" && w[from] != "fail")) r.fail("expected 'pass' or 'fail'");
  Expectation e;
  e.pass = w[from] == "pass";
  for (std::size_t i = from + 1; i < w.size(); ++i) {
    const auto op = w[i].find_first_of("=<>");
    if (op == std::string::npos || op == 0) r.fail("expected fact=value, got '" + w[i] + "'");
    // The operator stays with the value: "broken_cs>=1" -> ("broken_cs", ">=1").
    e.facts[w[i].substr(0, op)] = w[i].substr(op);
  }
  return e;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& source) {
  Scenario s;
  s.source = source;
  LineReader r{in, source, 0, {}};
  std::map<std::string, std::vector<std::string>> class_specs;
  std::vector<std::pair<std::size_t, std::string>> class_order;
  std::map<std::string, std::pair<std::size_t, Expectation>> block_expect;
  std::optional<std::vector<Module>> catalog_modules;
  bool catalog_complete = false;
  std::set<std::string> ids;

  while (auto wo = r.next()) {
    const auto& w = *wo;
    const std::string& head = w[0];
    if (head == "scenario") {
      if (w.size() != 2) r.fail("expected 'scenario NAME'");
      s.name = w[1];
    } else if (head == "algebra") {
      if (s.algebra.valid()) r.fail("algebra declared twice");
      if (w.size() < 3) r.fail("expected 'algebra builtin NAME' or 'algebra path|constants NAME ...'");
      if (w[1] == "builtin") {
        auto a = builtin_algebra(w[2]);
        if (!a) r.fail("unknown built-in algebra '" + w[2] + "'");
        s.algebra = *a;
      } else if (w[1] == "path") {
        s.algebra = parse_path_algebra(r, w[2], parse_p(key_values(w, 3, r), r));
      } else if (w[1] == "constants") {
        s.algebra = parse_constants_algebra(r, w[2], parse_p(key_values(w, 3, r), r));
      } else {
        r.fail("unknown algebra form '" + w[1] + "'");
      }
    } else if (head == "catalog") {
      if (!s.algebra.valid()) r.fail("catalog before algebra");
      if (catalog_modules) r.fail("catalog declared twice");
      if (w.size() >= 2 && w[1] == "declared") {
        if (!builtin_algebra(s.algebra.name())) r.fail("'catalog declared' needs a built-in algebra");
        catalog_modules = declared_catalog_modules(s.algebra);
        catalog_complete = true;
      } else if (w.size() >= 3 && w[1] == "enumerate") {
        std::size_t bound = 0;
        try {
          bound = std::stoul(w[2]);
        } catch (const std::logic_error&) {
          r.fail("bad bound '" + w[2] + "'");
        }
        try {
          catalog_modules = enumerate_indecomposables(s.algebra, bound);
        } catch (const BudgetError& e) {
          r.fail(e.what());
        }
        catalog_complete = w.size() >= 4 && w[3] == "complete";
      } else {
        catalog_complete = w.size() >= 2 && w[1] == "complete";
        catalog_modules = parse_module_block(r, s.algebra);
      }
    } else if (head == "class") {
      if (w.size() < 4 || w[2] != "=") r.fail("expected 'class NAME = ...'");
      if (class_specs.count(w[1])) r.fail("class " + w[1] + " declared twice");
      std::vector<std::string> gens;
      for (std::size_t i = 3; i < w.size(); ++i) {
        std::istringstream parts(w[i]);
        for (std::string g; std::getline(parts, g, ',');)
          if (!g.empty()) gens.push_back(g);
      }
      class_specs[w[1]] = gens;
      class_order.emplace_back(r.line, w[1]);
    } else if (head == "quiver") {
      if (w.size() != 2) r.fail("expected 'quiver NAME'");
      if (auto q = Quiver::builtin(w[1])) {
        s.quiver = *q;
      } else {
        s.quiver = parse_quiver_block(r, w[1]);
      }
    } else if (head == "check") {
      ScenarioCheck c;
      c.line = r.line;
      std::size_t i = 1;
      if (i < w.size() && w[i].size() > 1 && w[i].back() == ':') {
        c.id = w[i].substr(0, w[i].size() - 1);
        ++i;
      }
      if (i >= w.size()) r.fail("missing check kind");
      c.kind = w[i++];
      const auto sig = signatures().find(c.kind);
      if (sig == signatures().end()) r.fail("unknown check kind '" + c.kind + "'");
      for (; i < w.size() && w[i] != "expect"; ++i) {
        if (const auto eq = w[i].find('='); eq != std::string::npos)
          c.params[w[i].substr(0, eq)] = w[i].substr(eq + 1);
        else
          c.args.push_back(w[i]);
      }
      if (i < w.size()) c.expect = parse_expectation(w, i + 1, r);
      if (c.args.size() != sig->second.args.size())
        r.fail(c.kind + " takes " + std::to_string(sig->second.args.size()) + " arguments");
      if (c.id.empty()) c.id = c.kind + "@" + std::to_string(c.line);
      if (!ids.insert(c.id).second) r.fail("duplicate check id '" + c.id + "'");
      s.checks.push_back(std::move(c));
    } else if (head == "expect") {
      while (true) {
        auto e = r.next();
        if (!e) r.fail("unterminated expect block");
        if ((*e)[0] == "end") break;
        block_expect[(*e)[0]] = {r.line, parse_expectation(*e, 1, r)};
      }
    } else {
      r.fail("unknown directive '" + head + "'");
    }
  }
  s.hash = fnv1a(r.text);
  if (s.name.empty()) s.name = source;

  if (s.checks.empty() && !s.algebra.valid()) return s;
  if (!s.algebra.valid()) throw ParseError(source, r.line, "no algebra declared");
  if (!catalog_modules) {
    if (!builtin_algebra(s.algebra.name())) throw ParseError(source, r.line, "no catalog declared");
    catalog_modules = declared_catalog_modules(s.algebra);
    catalog_complete = true;
  }
  s.catalog = Catalog::make(s.algebra, *catalog_modules, catalog_complete, s.name);

  auto label_index = [&](const std::string& l) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < s.catalog->size(); ++i)
      if (s.catalog->label(i) == l) return i;
    return std::nullopt;
  };
  for (const auto& [line, name] : class_order) {
    const auto& gens = class_specs[name];
    ObjectClass c;
    if (gens.size() == 1 && (gens[0] == "proj" || gens[0] == "inj" || gens[0] == "all")) {
      c = gens[0] == "proj" ? ObjectClass::projectives(s.catalog)
          : gens[0] == "inj" ? ObjectClass::injectives(s.catalog)
                             : ObjectClass::all(s.catalog);
    } else {
      std::vector<std::size_t> members;
      for (const auto& g : gens) {
        const auto i = label_index(g);
        if (!i) throw ParseError(source, line, "class " + name + ": unknown module '" + g + "'");
        members.push_back(*i);
      }
      c = ObjectClass(s.catalog, members, name);
    }
    s.classes.emplace(name, c.renamed(name));
  }
  for (auto& [id, pe] : block_expect) {
    auto it = std::find_if(s.checks.begin(), s.checks.end(), [&](const ScenarioCheck& c) { return c.id == id; });
    if (it == s.checks.end()) throw ParseError(source, pe.first, "expectation for unknown check '" + id + "'");
    it->expect = pe.second;
  }
  for (const auto& c : s.checks) {
    const auto& sig = signatures().at(c.kind);
    if (sig.quiver && !s.quiver) throw ParseError(source, c.line, c.kind + " needs a quiver");
    for (std::size_t k = 0; k < c.args.size(); ++k) {
      const char t = sig.args[k];
      if (t == 'C' && !s.classes.count(c.args[k]))
        throw ParseError(source, c.line, "unknown class '" + c.args[k] + "'");
      if (t == 'M' && !label_index(c.args[k]))
        throw ParseError(source, c.line, "unknown module '" + c.args[k] + "'");
      if (t == 'V' && !s.quiver->vertex_index(c.args[k]))
        throw ParseError(source, c.line, "unknown vertex '" + c.args[k] + "'");
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_scenario(in, path);
}

// ---------------------------------------------------------------- running

int check_stage(const std::string& kind) {
  static const std::map<std::string, int> stages{
      {"catalog", 0}, {"ext", 0},
      {"pair", 1}, {"complete", 1}, {"hereditary", 1}, {"resolving", 1}, {"coresolving", 1},
      {"triplet", 2}, {"projectives", 2},
      {"balanced", 3}, {"admissible", 3}, {"triplet_balance", 3},
      {"balance_triplet", 4}, {"intersections", 4}, {"smd", 4}, {"equivalence", 4},
      {"universe", 5}, {"adjunction", 5}, {"cor1", 5}, {"prop1", 6}, {"cor2", 6}, {"qf", 6},
  };
  auto it = stages.find(kind);
  return it == stages.end() ? 7 : it->second;
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

bool ScenarioReport::all_matched() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.matched(); });
}

namespace {

std::string yn(bool b) { return b ? "yes" : "no"; }

struct Context {
  const Scenario& s;
  const RunConfig& config;
  std::optional<RepUniverse> universe;
  ClassResolver resolver;
  AlgebraResolver algebras;
};

CheckOptions options_for(const ScenarioCheck& c, const RunConfig& cfg) {
  CheckOptions o = cfg.options;
  auto num = [&](const char* key) -> std::optional<std::uint64_t> {
    auto it = c.params.find(key);
    if (it == c.params.end()) return std::nullopt;
    return std::stoull(it->second);
  };
  if (!cfg.ext_bound_set)
    if (auto v = num("ext_bound")) o.ext_bound = *v;
  if (!cfg.seed_set)
    if (auto v = num("seed")) o.seed = *v;
  if (!cfg.strict_set)
    if (auto it = c.params.find("strict"); it != c.params.end()) o.strict_exactness = it->second == "yes";
  if (auto v = num("multiplicity")) o.multiplicity_bound = *v;
  if (auto v = num("budget")) o.search_budget = *v;
  return o;
}

void evaluate(const Context& ctx, CheckOutcome& out) {
  const ScenarioCheck& c = out.check;
  const Scenario& s = ctx.s;
  const CheckOptions opts = options_for(c, ctx.config);
  auto cls = [&](std::size_t k) { return s.classes.at(c.args[k]); };
  auto label_of = [&](std::size_t i) { return s.catalog->label(i); };
  auto module_arg = [&](std::size_t k) {
    for (std::size_t i = 0; i < s.catalog->size(); ++i)
      if (label_of(i) == c.args[k]) return s.catalog->module(i);
    throw Error("unknown module " + c.args[k]);
  };
  auto& facts = out.facts;
  CheckReport& rep = out.report;
  const std::string& k = c.kind;

  if (k == "ext") {
    const Module a = module_arg(0), b = module_arg(1);
    const std::size_t n = c.params.count("n") ? std::stoul(c.params.at("n")) : 1;
    const std::size_t d = ext_dim(n, a, b);
    facts["dim"] = std::to_string(d);
    rep.name = "ext^" + std::to_string(n) + "(" + a.name() + ", " + b.name() + ")";
    Witness w;
    w.label = rep.name;
    w.claim_ext_dim(n, a, b, d);
    rep.witnesses.push_back(w);
    rep.verdict = true;
  } else if (k == "catalog") {
    const std::size_t bound = c.params.count("bound") ? std::stoul(c.params.at("bound")) : 2;
    const auto found = enumerate_indecomposables(s.algebra, bound);
    rep.name = "catalog integrity (bound " + std::to_string(bound) + ")";
    std::vector<bool> hit(s.catalog->size(), false);
    bool ok = true;
    for (const auto& m : found) {
      std::optional<std::size_t> match;
      for (std::size_t i = 0; i < s.catalog->size() && !match; ++i)
        if (s.catalog->module(i).dim() == m.dim() && isomorphism_of_indecomposables(s.catalog->module(i), m)) match = i;
      if (!match || hit[*match]) {
        ok = false;
        rep.note("enumerated module of dimension " + std::to_string(m.dim()) + " has no catalog partner");
        continue;
      }
      hit[*match] = true;
      Witness w;
      w.label = "enumerated " + m.name() + " = " + label_of(*match);
      w.claim_isomorphic(m, s.catalog->module(*match));
      rep.witnesses.push_back(w);
    }
    for (std::size_t i = 0; i < hit.size(); ++i)
      if (!hit[i] && s.catalog->module(i).dim() <= bound) {
        ok = false;
        rep.note("catalog module " + label_of(i) + " was not enumerated");
      }
    facts["enumerated"] = std::to_string(found.size());
    facts["declared"] = std::to_string(s.catalog->size());
    rep.verdict = ok && found.size() == s.catalog->size();
  } else if (k == "pair" || k == "complete" || k == "hereditary") {
    const PairReport p = k == "pair"       ? check_cotorsion_pair(cls(0), cls(1))
                         : k == "complete" ? check_complete(cls(0), cls(1), opts)
                                           : check_hereditary(cls(0), cls(1), opts);
    rep = p.report;
    facts["failures"] = std::to_string(p.failures.size());
    if (k == "hereditary") facts["certificate"] = p.report.certificate == "proved" ? "proved" : "bounded";
  } else if (k == "resolving" || k == "coresolving") {
    const PairReport p = k == "resolving" ? check_resolving(cls(0), opts) : check_coresolving(cls(0), opts);
    rep = p.report;
    facts["failures"] = std::to_string(p.failures.size());
  } else if (k == "triplet") {
    const TripletReport t = check_triplet(cls(0), cls(1), cls(2), opts);
    rep = t.report;
    rep.verdict = t.verdict();
    facts["pairs"] = yn(t.is_triplet);
    facts["complete"] = yn(t.complete);
    facts["hereditary"] = yn(t.hereditary);
    facts["certificate"] = t.hereditary_proved ? "proved" : "bounded";
    std::string ext;
    for (const PairReport* p : {&t.left_pair, &t.right_pair})
      for (const auto& f : p->failures)
        if (f.kind == "ext" && f.second) ext += (ext.empty() ? "" : ";") + label_of(f.first) + ">" + label_of(*f.second);
    facts["ext_failures"] = ext.empty() ? "none" : ext;
    if (c.params.count("require") && c.params.at("require") == "proved") rep.verdict = rep.verdict && t.hereditary_proved;
  } else if (k == "projectives") {
    rep.name = "projectives(" + c.args[0] + ", " + c.args[1] + ", " + c.args[2] + ")";
    rep.mode = s.catalog->complete() ? "exact" : "evidence";
    bool ok = true;
    for (std::size_t i = 0; i < s.catalog->size(); ++i) {
      const ProjectiveConstruction pc = projectives_from_triplet(cls(0), cls(1), cls(2), s.catalog->module(i), opts);
      ok = ok && pc.middle_projective && pc.middle_in_f && pc.middle_in_g;
      rep.witnesses.push_back(pc.witness);
    }
    rep.verdict = ok;
  } else if (k == "balanced") {
    const BalanceCertificate b = check_balanced(cls(0), cls(1), opts);
    rep = b.report;
    facts["counterexample"] = yn(!b.counterexamples.empty());
    if (!b.counterexamples.empty()) facts["counterexample_module"] = label_of(b.counterexamples.front().index);
  } else if (k == "admissible") {
    rep = check_admissible(cls(0), cls(1), opts).report;
  } else if (k == "intersections") {
    rep = check_intersections(cls(0), cls(1), cls(2), cls(3), opts);
    facts["precondition"] = rep.failed_hypothesis ? "failed" : "ok";
  } else if (k == "smd") {
    rep = check_smd_uniqueness(cls(0), cls(1), cls(2), opts);
    facts["precondition"] = rep.failed_hypothesis ? "failed" : "ok";
  } else if (k == "triplet_balance") {
    try {
      const TripletBalance tb = triplet_implies_balance(cls(0), cls(1), cls(2), opts);
      rep.name = "triplet_balance(" + c.args[0] + ", " + c.args[1] + ", " + c.args[2] + ")";
      rep.add_part(tb.triplet.report);
      rep.add_part(tb.balance.report);
      rep.add_part(tb.admissible.report);
      rep.verdict = tb.verdict();
      facts["precondition"] = "ok";
      facts["balanced"] = yn(tb.balance.verdict);
      facts["admissible"] = yn(tb.admissible.verdict);
    } catch (const PreconditionError& e) {
      rep.name = "triplet_balance(" + c.args[0] + ", " + c.args[1] + ", " + c.args[2] + ")";
      rep.failed_hypothesis = e.what();
      facts["precondition"] = "failed";
    }
  } else if (k == "balance_triplet") {
    const BalanceToTriplet bt = balance_to_triplet(cls(0), cls(1), opts);
    rep = bt.report;
    rep.verdict = bt.verdict();
    for (int h = 0; h < 3; ++h) facts["hypothesis" + std::to_string(h + 1)] = yn(bt.hypothesis[h]);
    facts["failed_hypothesis"] = bt.failed_hypothesis ? std::to_string(*bt.failed_hypothesis) : "none";
    facts["h_equals_g"] = yn(bt.h_equals_g);
    facts["f_cap_h_is_proj"] = yn(bt.f_cap_h_is_proj);
    facts["g_cap_l_is_inj"] = yn(bt.g_cap_l_is_inj);
    if (bt.g) facts["g"] = bt.g->member_expression();
  } else if (k == "equivalence") {
    const EquivalenceReport e = check_equivalence_corollary(cls(0), cls(1), cls(2), cls(3), opts);
    rep = e.report;
    facts["preconditions"] = yn(e.preconditions);
    facts["h_equals_g"] = yn(e.h_equals_g);
    facts["balanced"] = yn(e.balanced);
  } else {
    const RepUniverse& u = *ctx.universe;
    const Quiver& q = u.quiver;
    facts["universe"] = std::to_string(u.catalog->size());
    if (k == "universe") {
      rep.name = "universe(" + s.algebra.name() + ", " + q.name + ")";
      rep.mode = u.mode();
      rep.verdict = true;
      facts["closed"] = yn(u.closed);
      facts["dropped"] = std::to_string(u.dropped);
    } else if (k == "adjunction") {
      const std::size_t mmax = c.params.count("m") ? std::stoul(c.params.at("m")) : 1;
      rep.name = "adjunction(" + s.algebra.name() + ", " + q.name + ")";
      rep.mode = u.mode();
      std::map<AdjunctionVariant, std::size_t> broken;
      std::size_t checks = 0, failures = 0;
      for (std::size_t x = 0; x < u.catalog->size(); ++x) {
        const Representation xr = u.rep(x);
        for (std::size_t i = 0; i < q.vertex_count(); ++i)
          for (const auto& y : s.catalog->modules())
            for (std::size_t m = 0; m <= mmax; ++m)
              for (const auto v : {AdjunctionVariant::e_lambda_left, AdjunctionVariant::e_rho_right,
                                   AdjunctionVariant::c_s, AdjunctionVariant::s_k}) {
                const AdjunctionResult r = adjunction_check(v, i, y, xr, m);
                ++checks;
                if (r.holds()) continue;
                const std::string what = to_string(v) + " at vertex " + q.vertices()[i] + ", Y=" + y.name() +
                                         ", X=" + xr.name() + ", m=" + std::to_string(m) + ": " +
                                         std::to_string(r.rep_side) + " vs " + std::to_string(r.base_side);
                if (r.applicable) {
                  ++failures;
                  rep.note("identity fails: " + what);
                  continue;
                }
                if (broken[v]++ > 0) continue;
                rep.note("side condition fails and the identity breaks: " + what);
                // Both Ext dimensions, re-derivable from the modules alone.
                Witness w;
                w.label = "broken " + what;
                const PhiPsi pp = phi_psi(xr, i);
                if (v == AdjunctionVariant::c_s) {
                  w.claim_injective(pp.phi, false);
                  w.claim_ext_dim(m, xr.module(), stalk(i, y, q).module(), r.rep_side);
                  w.claim_ext_dim(m, pp.c, y, r.base_side);
                } else {
                  w.claim_surjective(pp.psi, false);
                  w.claim_ext_dim(m, stalk(i, y, q).module(), xr.module(), r.rep_side);
                  w.claim_ext_dim(m, y, pp.k, r.base_side);
                }
                rep.witnesses.push_back(w);
              }
      }
      facts["checks"] = std::to_string(checks);
      facts["failures"] = std::to_string(failures);
      facts["broken_cs"] = std::to_string(broken[AdjunctionVariant::c_s]);
      facts["broken_sk"] = std::to_string(broken[AdjunctionVariant::s_k]);
      rep.verdict = failures == 0;
    } else if (k == "cor1") {
      const std::size_t vk = *q.vertex_index(c.args[0]);
      std::optional<Representation> x;
      if (auto it = c.params.find("x"); it != c.params.end()) {
        for (std::size_t i = 0; i < u.catalog->size() && !x; ++i)
          if (u.catalog->label(i) == it->second) x = u.rep(i);
        if (!x) throw Error("cor1: no universe member named " + it->second);
      }
      rep.name = "cor1(" + c.args[0] + ", " + c.args[1] + ", " + c.args[2] + ")";
      try {
        const Cor1Result r = cor1_sequence(q, vk, module_arg(1), cls(2), x);
        rep.witnesses.push_back(r.witness);
        facts["precondition"] = "ok";
        facts["exact"] = yn(r.exact);
        if (r.hom_exact_against_x) facts["hom_exact"] = yn(*r.hom_exact_against_x);
        if (r.side_condition_failure) rep.note("side condition fails: " + *r.side_condition_failure);
        rep.verdict = r.exact && r.hom_exact_against_x.value_or(true);
      } catch (const PreconditionError& e) {
        rep.failed_hypothesis = e.what();
        facts["precondition"] = "failed";
      }
    } else if (k == "prop1") {
      const RepCheckReport r = check_prop1(cls(0), cls(1), u, opts);
      rep = r.report;
      facts["preconditions"] = yn(r.preconditions);
    } else if (k == "cor2") {
      const Cor2Result r = check_cor2(cls(0), cls(1), cls(2), cls(3), u, opts);
      rep = r.report;
      facts["preconditions"] = yn(r.preconditions);
      facts["h_equals_g"] = yn(r.h_equals_g);
      facts["rep_balanced"] = yn(r.rep_balanced);
      facts["counterexample"] = yn(!r.rep_balance.counterexamples.empty());
      if (!r.rep_balance.counterexamples.empty())
        facts["counterexample_rep"] = u.catalog->label(r.rep_balance.counterexamples.front().index);
    } else if (k == "qf") {
      const QfResult r = check_qf(u, opts);
      rep = r.report;
      facts["qf"] = yn(r.qf);
      facts["rep_balanced"] = yn(r.rep_balanced);
      facts["lifted_triplet"] = r.lifted_triplet ? yn(*r.lifted_triplet) : "n/a";
    }
  }
  out.verdict = rep.verdict;
}

bool fact_matches(const std::string& actual, const std::string& spec) {
  std::string op = "=";
  std::string value = spec;
  for (const char* o : {">=", "<=", "=", ">", "<"})
    if (spec.rfind(o, 0) == 0) {
      op = o;
      value = spec.substr(std::string(o).size());
      break;
    }
  if (op == "=") return actual == value;
  try {
    const long long a = std::stoll(actual), b = std::stoll(value);
    if (op == ">=") return a >= b;
    if (op == "<=") return a <= b;
    if (op == ">") return a > b;
    return a < b;
  } catch (const std::logic_error&) {
    return false;
  }
}

void collect_witnesses(const CheckReport& r, std::vector<const Witness*>& out) {
  for (const auto& w : r.witnesses) out.push_back(&w);
  for (const auto& w : r.counterexamples) out.push_back(&w);
  for (const auto& p : r.parts) collect_witnesses(p, out);
}

void replay(const Context& ctx, CheckOutcome& out) {
  std::vector<const Witness*> all;
  collect_witnesses(out.report, all);
  for (const Witness* w : all) {
    ++out.replayed;
    std::ostringstream text;
    write_witness(text, *w);
    std::istringstream in(text.str());
    std::string header;
    std::getline(in, header);
    try {
      const Witness back = read_witness(in, header, ctx.algebras);
      if (auto err = verify_witness(back, ctx.resolver)) out.replay_failures.push_back(w->label + ": " + *err);
    } catch (const Error& e) {
      out.replay_failures.push_back(w->label + ": " + e.what());
    }
  }
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, const RunConfig& config) {
  ScenarioReport report;
  report.scenario = s.name;
  report.hash = s.hash;
  report.config = config;
  if (s.checks.empty()) return report;

  Context ctx{s, config, std::nullopt, {}, {}};
  std::vector<ObjectClass> classes;
  for (const auto& [name, c] : s.classes) classes.push_back(c);
  std::map<std::string, Algebra> algebras{{s.algebra.name(), s.algebra}};
  const bool needs_quiver = std::any_of(s.checks.begin(), s.checks.end(),
                                        [](const ScenarioCheck& c) { return signatures().at(c.kind).quiver; });
  if (needs_quiver) {
    UniverseOptions uo;
    uo.dim_bound = config.universe_bound;
    ctx.universe = generate_rep_universe(s.catalog, *s.quiver, uo);
    algebras.emplace(ctx.universe->gamma.name(), ctx.universe->gamma);
    const ObjectClass mod = ObjectClass::all(s.catalog).renamed("mod");
    const ObjectClass proj = ObjectClass::projectives(s.catalog).renamed("Proj");
    std::vector<ObjectClass> bases{mod, proj};
    for (const auto& [name, c] : s.classes) bases.push_back(c);
    for (const auto& b : bases)
      for (const auto kind : {RepClassKind::rep, RepClassKind::phi, RepClassKind::psi})
        classes.push_back(rep_class(*ctx.universe, kind, b));
  }
  ctx.resolver = class_resolver(classes);
  ctx.algebras = [algebras](const std::string& name) -> std::optional<Algebra> {
    auto it = algebras.find(name);
    if (it == algebras.end()) return std::nullopt;
    return it->second;
  };

  std::vector<std::size_t> order(s.checks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return check_stage(s.checks[a].kind) < check_stage(s.checks[b].kind);
  });
  report.outcomes.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) report.outcomes[i].check = s.checks[order[i]];

  auto run_one = [&](CheckOutcome& out) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      evaluate(ctx, out);
      replay(ctx, out);
      for (const auto& msg : replay_report(out.report, ctx.resolver)) out.replay_failures.push_back(msg);
    } catch (const std::exception& e) {
      out.error = e.what();
      out.verdict = false;
    }
    out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (out.check.expect) {
      const Expectation& e = *out.check.expect;
      if (e.pass != out.verdict)
        out.expectation_failures.push_back(std::string("expected ") + (e.pass ? "pass" : "fail") + ", got " +
                                           (out.verdict ? "pass" : "fail"));
      for (const auto& [key, spec] : e.facts) {
        auto it = out.facts.find(key);
        if (it == out.facts.end())
          out.expectation_failures.push_back("fact " + key + " was not reported");
        else if (!fact_matches(it->second, spec))
          out.expectation_failures.push_back("fact " + key + ": expected " + spec + ", got " + it->second);
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, report.outcomes.size()));
  if (jobs == 1) {
    for (auto& o : report.outcomes) run_one(o);
  } else {
    // Stages run in order; checks within a stage run concurrently.
    std::size_t begin = 0;
    while (begin < report.outcomes.size()) {
      const int stage = check_stage(report.outcomes[begin].check.kind);
      std::size_t end = begin;
      while (end < report.outcomes.size() && check_stage(report.outcomes[end].check.kind) == stage) ++end;
      std::atomic<std::size_t> next{begin};
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < end;) run_one(report.outcomes[i]);
        });
      for (auto& t : pool) t.join();
      begin = end;
    }
  }
  return report;
}

void write_scenario_report(std::ostream& out, const ScenarioReport& r) {
  const CheckOptions& o = r.config.options;
  out << "scenario " << r.scenario << "\n";
  out << "hash " << hash_hex(r.hash) << "\n";
  out << "version cotri 0.1.0\n";
  out << "config ext_bound=" << o.ext_bound << " strict_exactness=" << (o.strict_exactness ? "yes" : "no")
      << " multiplicity_bound=" << o.multiplicity_bound << " search_budget=" << o.search_budget << " seed=" << o.seed
      << " universe_bound=" << r.config.universe_bound << " jobs=" << r.config.jobs << "\n";
  std::size_t matched = 0;
  for (const auto& c : r.outcomes) {
    matched += c.matched();
    out << "result " << c.check.id << " kind=" << c.check.kind << " verdict=" << (c.verdict ? "pass" : "fail");
    if (c.check.expect) out << " expected=" << (c.check.expect->pass ? "pass" : "fail");
    out << " match=" << (c.matched() ? "yes" : "no") << " replayed=" << c.replayed - c.replay_failures.size() << "/"
        << c.replayed << " time_ms=" << std::fixed << std::setprecision(1) << c.millis << "\n";
    out.unsetf(std::ios::floatfield);
    for (const auto& [k, v] : c.facts) out << "  fact " << k << "=" << v << "\n";
    if (c.error) out << "  error " << *c.error << "\n";
    for (const auto& e : c.expectation_failures) out << "  mismatch " << e << "\n";
    for (const auto& e : c.replay_failures) out << "  replay_failure " << e << "\n";
    write_report(out, c.report, "  ");
    out << "end result\n";
  }
  out << "summary checks=" << r.outcomes.size() << " matched=" << matched << "\n";
}

}  // namespace cotri
