#include "doctest.h"

#include <sstream>

#include "cotri/builtins.hpp"
#include "cotri/harness.hpp"
#include "cotri/homology.hpp"
#include "oracles.hpp"

using namespace cotri;

namespace {

Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in, "inline");
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

const char* kHeader = "scenario t\nalgebra builtin kA2\ncatalog declared\n";

}  // namespace

TEST_CASE("parse errors carry the line number") {
  CHECK(parse_error_line("scenario t\nalgebra builtin Nope\n") == 2);
  CHECK(parse_error_line(std::string(kHeader) + "class X = S1, Q7\n") == 4);
  CHECK(parse_error_line(std::string(kHeader) + "\n# comment\ncheck a: frobnicate X\n") == 6);
  CHECK(parse_error_line(std::string(kHeader) + "check a: ext S1\n") == 4);
  CHECK(parse_error_line(std::string(kHeader) + "check a: ext S1 S2 expect maybe\n") == 4);
  CHECK(parse_error_line(std::string(kHeader) + "check a: prop1 all all\n") == 4);
  CHECK(parse_error_line("scenario t\nalgebra builtin kA2\ncatalog\nmodule A\n") >= 4);
}

TEST_CASE("an empty check list runs and matches") {
  const Scenario s = parse(kHeader);
  CHECK(s.checks.empty());
  const ScenarioReport r = run_scenario(s, RunConfig{});
  CHECK(r.outcomes.empty());
  CHECK(r.all_matched());
}

TEST_CASE("the scenario hash depends on the text") {
  const Scenario a = parse(kHeader);
  const Scenario b = parse(std::string(kHeader) + "# changed\n");
  CHECK(a.hash != b.hash);
  CHECK(hash_hex(a.hash).size() == 16);
}

TEST_CASE("expectation mismatches are reported") {
  const Scenario s = parse(std::string(kHeader) +
                           "class M = all\n"
                           "check good: ext S1 S2 expect pass dim=1\n"
                           "check wrong_fact: ext S1 S2 expect pass dim=0\n"
                           "check wrong_verdict: pair M M expect pass\n");
  const ScenarioReport r = run_scenario(s, RunConfig{});
  REQUIRE(r.outcomes.size() == 3);
  CHECK_FALSE(r.all_matched());
  for (const auto& o : r.outcomes) {
    if (o.check.id == "good") CHECK(o.matched());
    else CHECK_FALSE(o.expectation_failures.empty());
  }
}

TEST_CASE("checks run in stage order") {
  CHECK(check_stage("pair") < check_stage("triplet"));
  CHECK(check_stage("triplet") < check_stage("balanced"));
  CHECK(check_stage("balanced") < check_stage("equivalence"));
  const Scenario s = parse(std::string(kHeader) +
                           "class M = all\nclass P = proj\nclass I = inj\n"
                           "check e: equivalence P M M I\ncheck t: triplet P M I\ncheck p: pair P M\n");
  const ScenarioReport r = run_scenario(s, RunConfig{});
  REQUIRE(r.outcomes.size() == 3);
  CHECK(r.outcomes[0].check.id == "p");
  CHECK(r.outcomes[1].check.id == "t");
  CHECK(r.outcomes[2].check.id == "e");
}

TEST_CASE("parallel runs give the same verdicts") {
  const Scenario s = load_scenario(std::string(COTRI_SCENARIO_DIR) + "/ka2_negative.scn");
  RunConfig one, four;
  four.jobs = 4;
  const ScenarioReport a = run_scenario(s, one), b = run_scenario(s, four);
  REQUIRE(a.outcomes.size() == b.outcomes.size());
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    CHECK(a.outcomes[i].check.id == b.outcomes[i].check.id);
    CHECK(a.outcomes[i].verdict == b.outcomes[i].verdict);
    CHECK(a.outcomes[i].facts == b.outcomes[i].facts);
  }
}

TEST_CASE("a tampered witness fails replay") {
  const Algebra k = ka2();
  const Module s1 = catalog_module(k, "S1"), s2 = catalog_module(k, "S2");
  Witness w;
  w.label = "ext";
  w.claim_ext_dim(1, s1, s2, 1);
  const auto algebras = [&](const std::string& name) -> std::optional<Algebra> {
    return name == k.name() ? std::optional<Algebra>(k) : std::nullopt;
  };
  const auto resolver = class_resolver({});
  auto round_trip = [&](const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    return read_witness(in, header, algebras);
  };
  std::ostringstream out;
  write_witness(out, w);
  const std::string text = out.str();
  CHECK_FALSE(verify_witness(round_trip(text), resolver).has_value());

  std::string tampered = text;
  const auto pos = tampered.find("value=1");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 7, "value=0");
  CHECK(verify_witness(round_trip(tampered), resolver).has_value());

  // A module whose action no longer satisfies the algebra relations is rejected on read.
  std::string broken = text;
  const auto act = broken.find("act 1 1x1:1");
  REQUIRE(act != std::string::npos);
  broken.replace(act, 11, "act 1 1x1:0");
  bool rejected = false;
  try {
    rejected = verify_witness(round_trip(broken), resolver).has_value();
  } catch (const Error&) {
    rejected = true;
  }
  CHECK(rejected);
}

TEST_CASE("enumerated indecomposables match the declared catalogs") {
  const std::vector<std::pair<std::string, std::size_t>> bounds{{"Lambda2", 2}, {"kA2", 2}, {"F2xF2", 1}};
  for (const auto& [name, bound] : bounds) {
    const Algebra a = *builtin_algebra(name);
    const auto found = enumerate_indecomposables(a, bound);
    const auto declared = declared_catalog_modules(a);
    REQUIRE(found.size() == declared.size());
    for (const auto& m : found) {
      std::size_t matches = 0;
      for (const auto& d : declared) matches += oracle::isomorphic(m, d);
      CHECK(matches == 1);
    }
  }
  CHECK_THROWS_AS(enumerate_indecomposables(ka2(), 6, 1000), BudgetError);
}
