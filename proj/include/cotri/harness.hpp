#pragma once

// Scenario files, the brute-force catalog oracle and the check runner.
//
// Scenario format (line oriented, '#' starts a comment):
//
//   scenario NAME
//   algebra builtin Lambda2 | kA2 | F2xF2
//   algebra path NAME p=P            block: vertex ..., arrow LABEL S T, relation TERM [+|- TERM]...
//   algebra constants NAME p=P       block: labels ..., unit ..., product A B = c..., idempotent ...,
//                                           radical ..., generator ...
//   catalog declared                 built-in catalog, complete
//   catalog enumerate N [complete]   brute-force indecomposables of dimension <= N
//   catalog [complete]               block: module NAME / act LABEL RxC:rows / end
//   class NAME = proj | inj | all | LABEL, LABEL, ...
//   quiver A2 | A3 | zigzag3 | discrete2
//   quiver NAME                      block: vertex ..., arrow LABEL S T
//   check [ID:] KIND ARG... [key=value]... [expect pass|fail [fact=value]...]
//   expect                           block: ID pass|fail [fact=value]...
//
// Blocks end with a line "end". Check kinds and their facts are listed in
// README.md.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cotri/algebra.hpp"
#include "cotri/catalog.hpp"
#include "cotri/cotorsion.hpp"
#include "cotri/error.hpp"
#include "cotri/quiver.hpp"
#include "cotri/report.hpp"

namespace cotri {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// All indecomposable modules of dimension 1..dim_bound up to isomorphism, by
/// enumerating every tuple of action matrices. Throws BudgetError when more than
/// `budget` tuples would be visited.
std::vector<Module> enumerate_indecomposables(const Algebra& a, std::size_t dim_bound,
                                              std::uint64_t budget = std::uint64_t{1} << 22);

struct Expectation {
  bool pass = true;
  std::map<std::string, std::string> facts;
};

struct ScenarioCheck {
  std::string id;
  std::size_t line = 0;
  std::string kind;
  std::vector<std::string> args;
  std::map<std::string, std::string> params;
  std::optional<Expectation> expect;
};

struct Scenario {
  std::string name;
  std::string source;
  std::uint64_t hash = 0;
  Algebra algebra;
  CatalogPtr catalog;
  std::map<std::string, ObjectClass> classes;
  std::optional<Quiver> quiver;
  std::vector<ScenarioCheck> checks;
};

Scenario parse_scenario(std::istream& in, const std::string& source);
Scenario load_scenario(const std::string& path);

struct RunConfig {
  CheckOptions options;
  std::size_t universe_bound = 8;
  std::size_t jobs = 1;
  /// Set when given on the command line; they override per-check parameters.
  bool ext_bound_set = false, strict_set = false, seed_set = false, universe_bound_set = false;
};

struct CheckOutcome {
  ScenarioCheck check;
  bool verdict = false;
  std::map<std::string, std::string> facts;
  CheckReport report;
  std::optional<std::string> error;
  std::vector<std::string> expectation_failures;
  std::size_t replayed = 0;
  std::vector<std::string> replay_failures;
  double millis = 0;

  bool matched() const { return !error && expectation_failures.empty() && replay_failures.empty(); }
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t hash = 0;
  RunConfig config;
  std::vector<CheckOutcome> outcomes;  // in execution-stage order, then by line

  bool all_matched() const;
};

/// Runs every check; independent checks run on `jobs` threads.
ScenarioReport run_scenario(const Scenario& s, const RunConfig& config);

void write_scenario_report(std::ostream& out, const ScenarioReport& r);

/// Stage of a check kind: pairs before triplets before balance before equivalences.
int check_stage(const std::string& kind);

std::string hash_hex(std::uint64_t h);

}  // namespace cotri
