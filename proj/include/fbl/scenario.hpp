#pragma once

#include "fbl/json_io.hpp"

#include <string>
#include <vector>

namespace fbl {

struct CheckResult {
  std::string description;
  std::string expected;
  std::string observed;
  std::string basis;  // where the expected value comes from
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  std::string lattice;
  std::uint64_t seed = 0;
  Json params;
  std::vector<CheckResult> checks;
  std::vector<std::string> caveats;
  Json witnesses;  // embedded points/tuples so claims re-check offline
  bool pass = true;
  double runtime_ms = 0;
  std::string timestamp;

  void add(const std::string& description, const std::string& expected,
           const std::string& observed, const std::string& basis);
  void add_bool(const std::string& description, bool expected, bool observed,
                const std::string& basis);
};

// canonical = true omits the volatile fields (timestamp, runtime_ms) so
// fixed-seed runs serialize byte-identically
Json report_to_json(const ScenarioReport& report, bool canonical);

std::vector<std::string> scenario_names();

// Dispatch by name. Common params: "lattice" (builtin descriptor or inline
// lattice object), "seed", "eps"; each scenario documents its own extras.
ScenarioReport run_scenario(const std::string& name, const Json& params);

// config: {"seed": n, "canonical": bool, "jobs": n,
//          "scenarios": [{"name": ..., <params>...}]}
// Scenario errors are isolated; the suite always completes.
Json run_all(const Json& config);

Json default_suite_config();

}  // namespace fbl
