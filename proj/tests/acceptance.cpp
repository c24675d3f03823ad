// One line per acceptance criterion; exit status 1 when any criterion fails.

#include <array>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cotri/balance.hpp"
#include "cotri/builtins.hpp"
#include "cotri/harness.hpp"
#include "cotri/homology.hpp"
#include "cotri/quiverrep.hpp"
#include "oracles.hpp"

using namespace cotri;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

struct Setting {
  std::string name;
  Algebra algebra;
  CatalogPtr catalog;
  ObjectClass mod, proj, inj;
};

Setting setting(const std::string& name) {
  Setting s;
  s.name = name;
  s.algebra = *builtin_algebra(name);
  s.catalog = builtin_catalog(s.algebra);
  s.mod = ObjectClass::all(s.catalog);
  s.proj = ObjectClass::projectives(s.catalog);
  s.inj = ObjectClass::injectives(s.catalog);
  return s;
}

const std::vector<std::string> kAlgebras{"Lambda2", "kA2", "F2xF2"};
const std::vector<std::string> kQuivers{"A2", "A3", "zigzag3"};

// Proj = Inj decided independently of the catalog's projective/injective lists:
// a module is projective iff Ext^1(M, -) vanishes on the catalog.
bool qf_direct(const Setting& s) {
  for (const auto& m : s.catalog->modules()) {
    bool proj = true, inj = true;
    for (const auto& n : s.catalog->modules()) {
      proj = proj && oracle::yoneda_ext1_dim(m, n) == 0;
      inj = inj && oracle::yoneda_ext1_dim(n, m) == 0;
    }
    if (proj != inj) return false;
  }
  return true;
}

Result criterion1() {
  Result r;
  std::size_t pairs = 0;
  for (const std::string name : {"Lambda2", "kA2"}) {
    const Setting s = setting(name);
    for (const auto& m : s.catalog->modules())
      for (const auto& n : s.catalog->modules()) {
        ++pairs;
        const auto lib = ext_dim(1, m, n), orc = oracle::yoneda_ext1_dim(m, n);
        r.require(lib == orc, name + ": Ext^1(" + m.name() + ", " + n.name() + ") library " + std::to_string(lib) +
                                  " vs oracle " + std::to_string(orc));
      }
  }
  const Algebra l = lambda2(), k = ka2();
  r.require(ext_dim(1, catalog_module(l, "S"), catalog_module(l, "S")) == 1, "Ext^1(S,S) != 1");
  r.require(ext_dim(1, catalog_module(k, "S1"), catalog_module(k, "S2")) == 1, "Ext^1(S1,S2) != 1");
  r.require(ext_dim(1, catalog_module(k, "S2"), catalog_module(k, "S1")) == 0, "Ext^1(S2,S1) != 0");
  if (r.pass) r.detail << pairs << " ordered pairs agree with the Yoneda oracle";
  return r;
}

Result criterion2() {
  Result r;
  std::size_t constructions = 0;
  for (const auto& name : kAlgebras) {
    const Setting s = setting(name);
    const TripletReport t = check_triplet(s.proj, s.mod, s.inj);
    r.require(t.verdict(), name + ": trivial triplet fails");
    r.require(t.hereditary_proved, name + ": heredity only verified to a bound");
    for (const auto& c : s.catalog->modules()) {
      const ProjectiveConstruction pc = projectives_from_triplet(s.proj, s.mod, s.inj, c);
      ++constructions;
      bool projective = true;
      for (const auto& n : s.catalog->modules()) projective = projective && ext_dim(1, pc.sequence.middle(), n) == 0;
      r.require(pc.middle_projective && projective && pc.sequence.is_valid(),
                name + ": middle term for " + c.name() + " is not projective");
    }
  }
  if (r.pass) r.detail << "proved on 3 algebras, " << constructions << " pullback constructions projective";
  return r;
}

Result criterion3() {
  Result r;
  for (const std::string name : {"Lambda2", "F2xF2"}) {
    const Setting s = setting(name);
    const TripletReport t = check_triplet(s.mod, s.proj, s.mod);
    r.require(t.verdict(), name + ": (mod, Proj, mod) fails");
  }
  const Setting s = setting("kA2");
  const TripletReport t = check_triplet(s.mod, s.proj, s.mod);
  r.require(!t.verdict(), "kA2: (mod, Proj, mod) unexpectedly passes");
  const auto proj_not_inj = s.proj.minus(s.inj);
  r.require(proj_not_inj.size() == 1 && s.catalog->label(proj_not_inj[0]) == "S2", "kA2: Proj \\ Inj is not {S2}");
  bool recorded = false;
  for (const PairReport* p : {&t.left_pair, &t.right_pair})
    for (const auto& f : p->failures)
      if (f.kind == "ext" && f.second && *f.second == proj_not_inj[0]) recorded = true;
  r.require(recorded, "kA2: no recorded Ext failure against S2");
  if (r.pass) r.detail << "Lambda2, F2xF2 pass; kA2 fails with S2 in Proj \\ Inj";
  return r;
}

Result criterion4() {
  Result r;
  std::size_t n = 0;
  for (const auto& name : kAlgebras) {
    const Setting s = setting(name);
    std::vector<std::array<ObjectClass, 3>> triplets{{s.proj, s.mod, s.inj}};
    if (name != "kA2") triplets.push_back({s.mod, s.proj, s.mod});
    for (const auto& [f, g, l] : triplets) {
      const TripletBalance tb = triplet_implies_balance(f, g, l);
      ++n;
      r.require(tb.verdict(), name + ": (" + f.name() + ", " + g.name() + ", " + l.name() + ") not admissible balanced");
    }
  }
  if (r.pass) r.detail << n << " triplets give admissible balanced pairs";
  return r;
}

Result criterion5() {
  Result r;
  auto positive = [&](const Setting& s, const ObjectClass& f, const ObjectClass& l) {
    const BalanceToTriplet bt = balance_to_triplet(f, l);
    const std::string tag = s.name + " (" + f.name() + ", " + l.name() + ")";
    r.require(bt.hypothesis[0] && bt.hypothesis[1] && bt.hypothesis[2], tag + ": a hypothesis fails");
    r.require(bt.h_equals_g, tag + ": H != G");
    r.require(bt.f_cap_h_is_proj && bt.g_cap_l_is_inj, tag + ": intersections wrong");
    r.require(bt.verdict(), tag + ": triplet not verified");
  };
  const Setting k = setting("kA2"), l = setting("Lambda2");
  positive(k, k.proj, k.inj);
  positive(l, l.mod, l.mod);
  const BalanceToTriplet neg = balance_to_triplet(k.mod, k.mod);
  r.require(neg.hypothesis[0] && !neg.hypothesis[1] && neg.failed_hypothesis == 2,
            "kA2 (mod, mod): did not fail exactly at hypothesis (2)");
  if (r.pass) r.detail << "kA2 (Proj, Inj) and Lambda2 (mod, mod) verified; kA2 (mod, mod) fails at (2)";
  return r;
}

Result criterion6() {
  Result r;
  std::size_t applicable = 0, broken_cs = 0, broken_sk = 0;
  for (const std::string name : {"Lambda2", "kA2"})
    for (const std::string qn : {"A2", "A3"}) {
      const Setting s = setting(name);
      const Quiver q = *Quiver::builtin(qn);
      const RepUniverse u = generate_rep_universe(s.catalog, q);
      for (std::size_t x = 0; x < u.catalog->size(); ++x) {
        const Representation xr = u.rep(x);
        for (std::size_t i = 0; i < q.vertex_count(); ++i)
          for (const auto& y : s.catalog->modules())
            for (std::size_t m = 0; m <= 1; ++m)
              for (const auto v : {AdjunctionVariant::e_lambda_left, AdjunctionVariant::e_rho_right,
                                   AdjunctionVariant::c_s, AdjunctionVariant::s_k}) {
                const AdjunctionResult a = adjunction_check(v, i, y, xr, m);
                if (a.applicable) {
                  ++applicable;
                  r.require(a.holds(), name + "/" + qn + " " + to_string(v) + " X=" + xr.name() + " Y=" + y.name() +
                                           " m=" + std::to_string(m) + ": " + std::to_string(a.rep_side) + " vs " +
                                           std::to_string(a.base_side));
                } else if (!a.holds()) {
                  (v == AdjunctionVariant::c_s ? broken_cs : broken_sk) += 1;
                }
              }
      }
    }
  r.require(broken_cs > 0, "no broken c-s instance logged");
  r.require(broken_sk > 0, "no broken s-k instance logged");
  if (r.pass)
    r.detail << applicable << " applicable instances hold; side condition broken with unequal dims: c-s " << broken_cs << ", s-k "
             << broken_sk;
  return r;
}

Result criterion7() {
  Result r;
  std::size_t runs = 0;
  for (const auto& name : kAlgebras)
    for (const auto& qn : kQuivers) {
      const Setting s = setting(name);
      const RepUniverse u = generate_rep_universe(s.catalog, *Quiver::builtin(qn));
      const std::string tag = name + "/" + qn;
      // (F, H, G, L) = (mod, Inj, Proj, mod) and the trivial (Proj, mod, mod, Inj).
      const Cor2Result a = check_cor2(s.mod, s.inj, s.proj, s.mod, u);
      const Cor2Result b = check_cor2(s.proj, s.mod, s.mod, s.inj, u);
      runs += 2;
      r.require(a.preconditions && a.agree(), tag + ": (mod, Inj, Proj, mod) disagrees");
      r.require(b.preconditions && b.agree() && b.rep_balanced, tag + ": trivial configuration disagrees");
      if (name == "kA2") {
        r.require(!a.h_equals_g && !a.rep_balanced, tag + ": expected H != G and no balance");
        r.require(!a.rep_balance.counterexamples.empty() && !a.rep_balance.report.counterexamples.empty(),
                  tag + ": no counterexample representation");
        std::vector<ObjectClass> classes{s.mod, s.proj, s.inj};
        for (const auto kind : {RepClassKind::rep, RepClassKind::phi, RepClassKind::psi})
          for (const auto& base : {s.mod, s.proj, s.inj}) classes.push_back(rep_class(u, kind, base));
        r.require(replay_report(a.report, class_resolver(classes)).empty(), tag + ": counterexample does not replay");
      }
    }
  if (r.pass) r.detail << runs << " runs agree; kA2 counterexamples replay";
  return r;
}

Result criterion8() {
  Result r;
  std::size_t qf_cases = 0;
  for (const auto& name : kAlgebras) {
    const Setting s = setting(name);
    const bool direct = qf_direct(s);
    for (const auto& qn : kQuivers) {
      const RepUniverse u = generate_rep_universe(s.catalog, *Quiver::builtin(qn));
      const QfResult q = check_qf(u);
      const std::string tag = name + "/" + qn;
      r.require(q.qf == direct, tag + ": QF flag disagrees with the direct computation");
      r.require(q.rep_balanced == direct, tag + ": rep balance disagrees with QF");
      if (direct) {
        ++qf_cases;
        r.require(q.lifted_triplet.value_or(false), tag + ": lifted triplet not verified");
      }
    }
  }
  if (r.pass) r.detail << "9 combinations agree; lifted triplet verified in " << qf_cases << " QF cases";
  return r;
}

Result criterion9() {
  Result r;
  const std::vector<std::pair<std::string, std::size_t>> bounds{{"Lambda2", 2}, {"F2xF2", 1}, {"kA2", 2}};
  for (const auto& [name, bound] : bounds) {
    const Setting s = setting(name);
    const auto found = enumerate_indecomposables(s.algebra, bound);
    std::vector<bool> used(s.catalog->size(), false);
    bool ok = found.size() == s.catalog->size();
    for (const auto& m : found) {
      bool matched = false;
      for (std::size_t i = 0; i < used.size() && !matched; ++i)
        if (!used[i] && oracle::isomorphic(m, s.catalog->module(i))) used[i] = matched = true;
      ok = ok && matched;
    }
    r.require(ok, name + ": enumeration does not match the declared catalog");
  }
  if (r.pass) r.detail << "declared catalogs reproduced at bounds 2, 1, 2";
  return r;
}

Result criterion10() {
  Result r;
  std::size_t replayed = 0, scenarios = 0;
  for (const auto& entry : std::filesystem::directory_iterator(COTRI_SCENARIO_DIR)) {
    if (entry.path().extension() != ".scn") continue;
    ++scenarios;
    const Scenario s = load_scenario(entry.path().string());
    const ScenarioReport rep = run_scenario(s, RunConfig{});
    for (const auto& o : rep.outcomes) {
      replayed += o.replayed;
      r.require(!o.error, entry.path().filename().string() + " " + o.check.id + ": " + o.error.value_or(""));
      r.require(o.replay_failures.empty(), entry.path().filename().string() + " " + o.check.id + ": " +
                                                (o.replay_failures.empty() ? "" : o.replay_failures.front()));
    }
  }
  r.require(scenarios > 0 && replayed > 0, "no witnesses found");
  if (r.pass) r.detail << replayed << " witnesses from " << scenarios << " scenarios replay after a text round trip";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"Ext oracle equivalence", criterion1},
      {"trivial triplet theorem", criterion2},
      {"quasi-Frobenius equivalence", criterion3},
      {"triplet implies balance", criterion4},
      {"balance implies triplet", criterion5},
      {"adjunction identities", criterion6},
      {"corollary equivalence grid", criterion7},
      {"QF check over quivers", criterion8},
      {"catalog integrity", criterion9},
      {"witness round trip", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << "exception: " << e.what();
    }
    failed += !r.pass;
    std::cout << "criterion " << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << r.detail.str() << std::endl;
  }
  return failed ? 1 : 0;
}
