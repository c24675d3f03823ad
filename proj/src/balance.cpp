#include "cotri/balance.hpp"

#include <algorithm>

#include "cotri/error.hpp"
#include "cotri/homology.hpp"

namespace cotri {

namespace {

std::string mode_of(const ObjectClass& c) { return c.catalog()->complete() ? "exact" : "evidence"; }

// Tests a three-term sequence against both classes; nullopt when it is a valid
// balance witness. `left` selects the precover shape K -> F -> M.
std::optional<BalanceCounterexample> test_sequence(const ObjectClass& f, const ObjectClass& l,
                                                   const ModuleMap& first, const ModuleMap& second, bool left,
                                                   bool strict) {
  BalanceCounterexample cx;
  cx.side = left ? "left" : "right";
  cx.sequence = {first, second};
  const bool exact = left ? is_left_exact(first, second, strict) : is_right_exact(first, second, strict);
  if (!exact) {
    cx.reason = "exactness";
    return cx;
  }
  for (const Variance v : {Variance::covariant, Variance::contravariant}) {
    const AcyclicityResult r = is_hom_acyclic(cx.sequence, v == Variance::covariant ? f : l, v);
    if (r.acyclic) continue;
    cx.reason = "acyclicity";
    cx.generator = r.generator;
    cx.position = r.position;
    cx.variance = v;
    return cx;
  }
  return std::nullopt;
}

struct SequenceCandidate {
  ModuleMap first, second;
};

SequenceCandidate precover_sequence(const ModuleMap& phi) {
  const SubmoduleResult k = kernel(phi);
  return {ModuleMap::trusted(k.module, phi.source(), k.inclusion.matrix()), phi};
}

SequenceCandidate preenvelope_sequence(const ModuleMap& psi) {
  const QuotientResult q = cokernel(psi);
  return {psi, ModuleMap::trusted(psi.target(), q.module, q.projection.matrix())};
}

// Alternative approximations: the canonical one plus redundant generator copies
// mapped by zero or by a basis map.
std::vector<ModuleMap> alternates(const ObjectClass& cls, const ModuleMap& canonical, const Module& m, bool left,
                                  std::size_t bound) {
  std::vector<ModuleMap> out;
  const Algebra& a = m.algebra();
  for (const auto& g : cls.generators()) {
    const auto hb = left ? hom_basis(g, m) : hom_basis(m, g);
    std::vector<ModuleMap> choices = {left ? ModuleMap::zero(g, m) : ModuleMap::zero(m, g)};
    if (!hb.empty()) choices.push_back(hb.front());
    for (std::size_t k = 1; k <= bound; ++k)
      for (const auto& h : choices) {
        std::vector<Module> parts = {left ? canonical.source() : canonical.target()};
        std::vector<ModuleMap> maps = {canonical};
        for (std::size_t j = 0; j < k; ++j) {
          parts.push_back(g);
          maps.push_back(h);
        }
        const Biproduct bp = direct_sum(a, parts);
        out.push_back(left ? copairing(bp, maps) : pairing(bp, maps));
      }
  }
  return out;
}

void claim_all_acyclic(Witness& w, const std::vector<ModuleMap>& seq, const ObjectClass& f, const ObjectClass& l) {
  for (const auto& t : f.generators()) w.claim_acyclic(seq, t, Variance::covariant);
  for (const auto& t : l.generators()) w.claim_acyclic(seq, t, Variance::contravariant);
}

Witness counterexample_witness(const ObjectClass& f, const ObjectClass& l, const BalanceCounterexample& cx,
                               bool strict, const std::string& label) {
  Witness w;
  w.label = label;
  const bool left = cx.side == "left";
  const Module& middle = cx.sequence[0].target();
  w.claim_member(middle, left ? f.name() : l.name());
  if (cx.reason == "exactness") {
    const bool weak = left ? is_left_exact(cx.sequence[0], cx.sequence[1], false)
                           : is_right_exact(cx.sequence[0], cx.sequence[1], false);
    if (weak && left)
      w.claim_left_exact(cx.sequence[0], cx.sequence[1], false);
    else if (weak)
      w.claim_right_exact(cx.sequence[0], cx.sequence[1], false);
    if (weak && strict) w.claims.push_back({left ? ClaimKind::not_surjective : ClaimKind::not_injective,
                                    {w.add_map(left ? cx.sequence[1] : cx.sequence[0])}, {}, 0, 0, false});
    if (!weak) w.claim_surjective(left ? cx.sequence[0] : cx.sequence[1], false);
    return w;
  }
  const ObjectClass& cls = cx.variance == Variance::covariant ? f : l;
  const Module& t = cls.catalog()->module(*cx.generator);
  if (left)
    w.claim_left_exact(cx.sequence[0], cx.sequence[1], strict);
  else
    w.claim_right_exact(cx.sequence[0], cx.sequence[1], strict);
  w.claim_member(t, cls.name());
  w.claim_not_acyclic(cx.sequence, t, cx.variance, *cx.position);
  return w;
}

}  // namespace

BalanceCertificate check_balanced(const ObjectClass& f, const ObjectClass& l, const CheckOptions& opts) {
  require_same_catalog(f, l, "check_balanced");
  const Catalog& cat = *f.catalog();
  BalanceCertificate out;
  CheckReport& rep = out.report;
  rep.name = "balanced(" + f.name() + ", " + l.name() + ")";
  rep.mode = mode_of(f);
  if (opts.strict_exactness) rep.note("strict exactness");
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const Module& m = cat.module(i);
    BalanceEntry e;
    e.index = i;
    e.method = "canonical";
    std::optional<BalanceCounterexample> fail;

    const ModuleMap phi = canonical_precover(f, m);
    SequenceCandidate left = precover_sequence(phi);
    fail = test_sequence(f, l, left.first, left.second, true, opts.strict_exactness);
    if (fail)
      for (const auto& alt : alternates(f, phi, m, true, opts.multiplicity_bound)) {
        SequenceCandidate c = precover_sequence(alt);
        if (test_sequence(f, l, c.first, c.second, true, opts.strict_exactness)) continue;
        left = c;
        fail.reset();
        e.method = "alternate";
        break;
      }
    if (!fail) {
      const ModuleMap psi = canonical_preenvelope(l, m);
      SequenceCandidate right = preenvelope_sequence(psi);
      fail = test_sequence(f, l, right.first, right.second, false, opts.strict_exactness);
      if (fail)
        for (const auto& alt : alternates(l, psi, m, false, opts.multiplicity_bound)) {
          SequenceCandidate c = preenvelope_sequence(alt);
          if (test_sequence(f, l, c.first, c.second, false, opts.strict_exactness)) continue;
          right = c;
          fail.reset();
          e.method = "alternate";
          break;
        }
      if (!fail) {
        e.k_to_f = left.first;
        e.f_to_m = left.second;
        e.m_to_l = right.first;
        e.l_to_c = right.second;
      }
    }
    if (fail) {
      fail->index = i;
      std::string label = cat.label(i) + ": " + fail->side + " sequence fails " + fail->reason;
      if (fail->generator)
        label += std::string(" against Hom") + (fail->variance == Variance::covariant ? "(" : "(-, ") +
                 cat.label(*fail->generator) + (fail->variance == Variance::covariant ? ", -)" : ")") +
                 " at position " + std::to_string(*fail->position);
      rep.note(label);
      rep.counterexamples.push_back(counterexample_witness(f, l, *fail, opts.strict_exactness, label));
      out.counterexamples.push_back(std::move(*fail));
      break;
    }
    Witness w;
    w.label = "balance sequences for " + cat.label(i) + " (" + e.method + ")";
    w.claim_left_exact(e.k_to_f, e.f_to_m, opts.strict_exactness);
    w.claim_member(e.f_to_m.source(), f.name());
    claim_all_acyclic(w, {e.k_to_f, e.f_to_m}, f, l);
    w.claim_right_exact(e.m_to_l, e.l_to_c, opts.strict_exactness);
    w.claim_member(e.m_to_l.target(), l.name());
    claim_all_acyclic(w, {e.m_to_l, e.l_to_c}, f, l);
    rep.witnesses.push_back(std::move(w));
    out.entries.push_back(std::move(e));
  }
  out.verdict = out.counterexamples.empty();
  rep.verdict = out.verdict;
  return out;
}

AdmissibleReport check_admissible(const ObjectClass& f, const ObjectClass& l, const CheckOptions&) {
  require_same_catalog(f, l, "check_admissible");
  const Catalog& cat = *f.catalog();
  AdmissibleReport out;
  CheckReport& rep = out.report;
  rep.name = "admissible(" + f.name() + ", " + l.name() + ")";
  rep.mode = mode_of(f);
  bool ok = true;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const Module& m = cat.module(i);
    const SequenceCandidate left = precover_sequence(canonical_precover(f, m));
    const SequenceCandidate right = preenvelope_sequence(canonical_preenvelope(l, m));
    const bool epi = left.second.is_surjective();
    const bool mono = right.first.is_injective();
    Witness w;
    w.label = "approximations of " + cat.label(i);
    w.claim_member(left.second.source(), f.name());
    w.claim_surjective(left.second, epi);
    for (const auto& t : f.generators()) w.claim_acyclic({left.first, left.second}, t, Variance::covariant);
    w.claim_member(right.first.target(), l.name());
    w.claim_injective(right.first, mono);
    for (const auto& t : l.generators()) w.claim_acyclic({right.first, right.second}, t, Variance::contravariant);
    if (epi && mono) {
      rep.witnesses.push_back(std::move(w));
      continue;
    }
    ok = false;
    rep.note(cat.label(i) + (epi ? ": preenvelope is not a monomorphism" : ": precover is not an epimorphism"));
    rep.counterexamples.push_back(std::move(w));
  }
  out.verdict = ok;
  rep.verdict = ok;
  return out;
}

namespace {

void membership_witness(CheckReport& rep, const std::string& label, const Catalog& cat,
                        const std::vector<std::size_t>& idx, const std::vector<std::string>& classes) {
  Witness w;
  w.label = label;
  for (auto i : idx)
    for (const auto& c : classes) w.claim_member(cat.module(i), c);
  rep.witnesses.push_back(std::move(w));
}

}  // namespace

CheckReport check_intersections(const ObjectClass& f, const ObjectClass& h, const ObjectClass& g,
                                const ObjectClass& l, const CheckOptions& opts) {
  const Catalog& cat = *f.catalog();
  CheckReport rep;
  rep.name = "intersections(" + f.name() + ", " + h.name() + ", " + g.name() + ", " + l.name() + ")";
  rep.mode = mode_of(f);
  const PairReport fh = check_cotorsion_pair(f, h);
  const PairReport gl = check_cotorsion_pair(g, l);
  const BalanceCertificate bal = check_balanced(f, l, opts);
  rep.add_part(fh.report);
  rep.add_part(gl.report);
  rep.add_part(bal.report);
  if (!fh.verdict || !gl.verdict || !bal.verdict) {
    rep.failed_hypothesis = !fh.verdict ? "(" + f.name() + ", " + h.name() + ") is not a cotorsion pair"
                            : !gl.verdict ? "(" + g.name() + ", " + l.name() + ") is not a cotorsion pair"
                                          : "(" + f.name() + ", " + l.name() + ") is not balanced";
    rep.note("precondition failed: " + *rep.failed_hypothesis);
    rep.verdict = false;
    return rep;
  }
  const ObjectClass fg = f.intersect(g);
  const ObjectClass hl = h.intersect(l);
  const bool ok1 = fg.members() == cat.projective_indices();
  const bool ok2 = hl.members() == cat.injective_indices();
  rep.note(fg.describe() + (ok1 ? " = Proj" : " != Proj"));
  rep.note(hl.describe() + (ok2 ? " = Inj" : " != Inj"));
  membership_witness(rep, f.name() + " n " + g.name() + " = Proj", cat, fg.members(), {f.name(), g.name(), "Proj"});
  membership_witness(rep, "Proj in " + f.name() + " n " + g.name(), cat, cat.projective_indices(),
                     {f.name(), g.name()});
  membership_witness(rep, h.name() + " n " + l.name() + " = Inj", cat, hl.members(), {h.name(), l.name(), "Inj"});
  membership_witness(rep, "Inj in " + h.name() + " n " + l.name(), cat, cat.injective_indices(),
                     {h.name(), l.name()});
  rep.verdict = ok1 && ok2;
  return rep;
}

CheckReport check_smd_uniqueness(const ObjectClass& f1, const ObjectClass& f2, const ObjectClass& l,
                                 const CheckOptions& opts) {
  CheckReport rep;
  rep.name = "smd_uniqueness(" + f1.name() + ", " + f2.name() + "; " + l.name() + ")";
  rep.mode = mode_of(f1);
  for (const ObjectClass* fc : {&f1, &f2}) {
    const BalanceCertificate b = check_balanced(*fc, l, opts);
    const AdmissibleReport a = check_admissible(*fc, l, opts);
    rep.add_part(b.report);
    rep.add_part(a.report);
    if (!rep.failed_hypothesis && !(b.verdict && a.verdict))
      rep.failed_hypothesis = "(" + fc->name() + ", " + l.name() + ") is not " +
                              (b.verdict ? "admissible" : "balanced");
  }
  if (rep.failed_hypothesis) {
    rep.note("precondition failed: " + *rep.failed_hypothesis);
    rep.verdict = false;
    return rep;
  }
  rep.verdict = f1.same_members(f2);
  rep.note(f1.describe());
  rep.note(f2.describe());
  return rep;
}

TripletBalance triplet_implies_balance(const ObjectClass& f, const ObjectClass& g, const ObjectClass& l,
                                       const CheckOptions& opts) {
  TripletBalance out;
  out.triplet = check_triplet(f, g, l, opts);
  if (!out.triplet.verdict())
    throw PreconditionError("triplet_implies_balance: (" + f.name() + ", " + g.name() + ", " + l.name() +
                            ") is not a complete hereditary cotorsion triplet");
  out.balance = check_balanced(f, l, opts);
  out.admissible = check_admissible(f, l, opts);
  return out;
}

BalanceToTriplet balance_to_triplet(const ObjectClass& f, const ObjectClass& l, const CheckOptions& opts) {
  require_same_catalog(f, l, "balance_to_triplet");
  const Catalog& cat = *f.catalog();
  BalanceToTriplet out;
  CheckReport& rep = out.report;
  rep.name = "balance_to_triplet(" + f.name() + ", " + l.name() + ")";
  rep.mode = mode_of(f);

  // (1) F resolving and special precovering
  const PairReport res = check_resolving(f, opts);
  rep.add_part(res.report);
  bool special = true;
  const ObjectClass fperp1 = perp1(f, Side::right);
  const auto fgens = f.generators();
  for (std::size_t i = 0; i < cat.size() && special; ++i) {
    std::string method;
    auto s = special_precover_sequence(f, fperp1, cat.module(i), opts, &method);
    if (!s) {
      special = false;
      rep.note("no special " + f.name() + "-precover of " + cat.label(i));
      continue;
    }
    Witness w;
    w.label = "special " + f.name() + "-precover of " + cat.label(i) + " (" + method + ")";
    w.claim_short_exact(*s);
    w.claim_member(s->middle(), f.name());
    for (const auto& gmod : fgens) w.claim_ext_dim(1, gmod, s->left(), 0);
    rep.witnesses.push_back(std::move(w));
  }
  out.hypothesis[0] = res.verdict && special;

  // (2) F n F^perp in ^perp L and ^perp L n L in F^perp
  const ObjectClass h = perp_all(f, Side::right, opts.ext_bound, "rperp(" + f.name() + ")");
  const ObjectClass g = perp_all(l, Side::left, opts.ext_bound, "lperp(" + l.name() + ")");
  out.h = h;
  out.g = g;
  const auto lgens = l.generators();
  bool inc = true;
  const ObjectClass fh = f.intersect(h);
  for (auto i : fh.members()) {
    if (g.contains_index(i)) continue;
    inc = false;
    const HigherExtResult r = higher_ext_vanishing(cat.module(i), lgens, opts.ext_bound);
    const auto [n, idx, d] = *r.failure;
    const std::string label = cat.label(i) + " lies in " + f.name() + " n " + h.name() + " but not in " + g.name();
    rep.note(label);
    Witness w;
    w.label = label;
    w.claim_member(cat.module(i), f.name());
    for (const auto& gmod : fgens) w.claim_ext_dim(1, gmod, cat.module(i), 0);
    w.claim_member(lgens[idx], l.name());
    w.claim_ext_dim(n, cat.module(i), lgens[idx], d);
    rep.counterexamples.push_back(std::move(w));
  }
  const ObjectClass gl = g.intersect(l);
  for (auto i : gl.members()) {
    if (h.contains_index(i)) continue;
    inc = false;
    const HigherExtResult r = higher_ext_vanishing_dual(fgens, cat.module(i), opts.ext_bound);
    const auto [n, idx, d] = *r.failure;
    const std::string label = cat.label(i) + " lies in " + g.name() + " n " + l.name() + " but not in " + h.name();
    rep.note(label);
    Witness w;
    w.label = label;
    w.claim_member(cat.module(i), l.name());
    for (const auto& lmod : lgens) w.claim_ext_dim(1, cat.module(i), lmod, 0);
    w.claim_member(fgens[idx], f.name());
    w.claim_ext_dim(n, fgens[idx], cat.module(i), d);
    rep.counterexamples.push_back(std::move(w));
  }
  out.hypothesis[1] = inc;

  // (3) balance
  const BalanceCertificate bal = check_balanced(f, l, opts);
  rep.add_part(bal.report);
  out.hypothesis[2] = bal.verdict;

  for (int k = 0; k < 3; ++k)
    if (!out.hypothesis[k]) {
      out.failed_hypothesis = k + 1;
      break;
    }
  rep.note(h.describe());
  rep.note(g.describe());
  if (out.failed_hypothesis) {
    rep.failed_hypothesis = "hypothesis (" + std::to_string(*out.failed_hypothesis) + ")";
    rep.verdict = false;
    return out;
  }
  out.h_equals_g = h.same_members(g);
  out.f_cap_h_is_proj = fh.members() == cat.projective_indices();
  out.g_cap_l_is_inj = gl.members() == cat.injective_indices();
  const ObjectClass gc = g.renamed(g.member_expression());
  const TripletReport t = check_triplet(f, gc, l, opts);
  out.triplet_verified = t.verdict();
  rep.add_part(t.report);
  if (!out.h_equals_g) rep.note("F^perp != ^perp L");
  if (!out.f_cap_h_is_proj) rep.note("F n F^perp != Proj");
  if (!out.g_cap_l_is_inj) rep.note("^perp L n L != Inj");
  rep.verdict = out.verdict();
  return out;
}

EquivalenceReport check_equivalence_corollary(const ObjectClass& f, const ObjectClass& h, const ObjectClass& g,
                                              const ObjectClass& l, const CheckOptions& opts) {
  EquivalenceReport out;
  CheckReport& rep = out.report;
  rep.name = "equivalence(" + f.name() + ", " + h.name() + ", " + g.name() + ", " + l.name() + ")";
  rep.mode = mode_of(f);
  std::optional<std::string> failed;
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
  if (!failed && !f.intersect(h).subset_of(g)) failed = f.name() + " n " + h.name() + " is not contained in " + g.name();
  if (!failed && !g.intersect(l).subset_of(h)) failed = g.name() + " n " + l.name() + " is not contained in " + h.name();
  out.preconditions = !failed;
  if (failed) {
    rep.failed_hypothesis = *failed;
    rep.note("precondition failed: " + *failed);
  }
  out.h_equals_g = h.same_members(g);
  out.balance = check_balanced(f, l, opts);
  out.balanced = out.balance.verdict;
  rep.add_part(out.balance.report);
  rep.note(std::string(out.h_equals_g ? "H = G" : "H != G") + ", " + (out.balanced ? "balanced" : "not balanced"));
  rep.verdict = out.agree();
  return out;
}

}  // namespace cotri
