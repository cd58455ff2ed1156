#ifndef KOSTIN_SCENARIO_HPP
#define KOSTIN_SCENARIO_HPP

// Scenario runner: executes the pipeline selected by a ScenarioConfig,
// writes CSV artifacts and a machine-readable JSON validation report.
//
// Exit codes: 0 all enabled checks pass, 1 a check failed, 2 configuration
// error, 3 numerical failure.

#include <string>
#include <vector>

#include <json.hpp>

#include "kostin/config.hpp"

namespace kostin {

inline constexpr const char* kVersion = "1.0.0";

struct CheckResult {
  std::string name;
  std::string oracle;
  double tolerance = 0.0;
  double measured = 0.0;
  bool pass = false;
};

struct ScenarioReport {
  int exit_code = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;
  nlohmann::ordered_json json;
};

/// Run the configured pipeline, write artifacts under cfg.out_dir and return
/// the report (also written as report.json when JSON output is enabled).
ScenarioReport run_scenario(const ScenarioConfig& cfg);

/// Moments, PDE and (when applicable) perturbation side by side; reports
/// pairwise deviations and the uncertainty-product minimum.
ScenarioReport cross_validate(const ScenarioConfig& cfg);

}  // namespace kostin

#endif  // KOSTIN_SCENARIO_HPP
