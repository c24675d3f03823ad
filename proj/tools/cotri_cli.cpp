// cotri check <scenario> [options]
//
// Exit codes: 0 every expectation met, 1 an expectation mismatch, 2 a
// configuration or parse error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cotri/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of cotorsion triplets and balanced pairs"};
  app.require_subcommand(1);
  auto* check = app.add_subcommand("check", "Run the checks of a scenario file");

  std::string scenario, report_path;
  std::size_t ext_bound = 0, universe_bound = 0, jobs = 1;
  std::uint64_t seed = 0;
  bool strict = false;
  check->add_option("scenario", scenario, "Scenario file")->required();
  auto* ext_opt = check->add_option("--ext-bound", ext_bound, "Largest n for bounded Ext vanishing checks");
  check->add_flag("--strict-exactness", strict, "Read left/right exactness strictly");
  auto* ub_opt = check->add_option("--universe-bound", universe_bound, "Largest vertex dimension in the representation universe");
  auto* seed_opt = check->add_option("--seed", seed, "Seed for sampled searches");
  check->add_option("--report", report_path, "Write the report to this file");
  check->add_option("--jobs", jobs, "Checks run concurrently within a stage")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cotri::RunConfig cfg;
  cfg.jobs = jobs;
  if (*ext_opt) {
    cfg.options.ext_bound = ext_bound;
    cfg.ext_bound_set = true;
  }
  if (strict) {
    cfg.options.strict_exactness = true;
    cfg.strict_set = true;
  }
  if (*seed_opt) {
    cfg.options.seed = seed;
    cfg.seed_set = true;
  }
  if (*ub_opt) {
    cfg.universe_bound = universe_bound;
    cfg.universe_bound_set = true;
  }

  cotri::Scenario s;
  try {
    s = cotri::load_scenario(scenario);
  } catch (const cotri::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  cotri::ScenarioReport r;
  try {
    r = cotri::run_scenario(s, cfg);
  } catch (const cotri::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& o : r.outcomes)
    std::cout << (o.matched() ? "ok    " : "FAIL  ") << o.check.id << "  " << o.check.kind << " -> "
              << (o.verdict ? "pass" : "fail") << (o.error ? "  (" + *o.error + ")" : "") << "\n";
  std::cout << r.outcomes.size() << " checks, scenario hash " << cotri::hash_hex(r.hash) << "\n";

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return 2;
    }
    cotri::write_scenario_report(out, r);
  }
  return r.all_matched() ? 0 : 1;
}
