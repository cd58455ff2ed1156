#ifndef KOSTIN_CONFIG_HPP
#define KOSTIN_CONFIG_HPP

// Scenario configuration: flat `section.key = value` text files, one
// scenario per file.  '#' starts a comment.  Unknown keys are rejected with
// the offending key path.

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "kostin/core.hpp"

namespace kostin {

enum class Pipeline { moments, perturbation, pde, wigner, cross_validate };

std::string to_string(Pipeline p);

struct ScenarioConfig {
  Pipeline pipeline = Pipeline::moments;
  PhysicalParams params;

  Potential::Family family = Potential::Family::free;
  double stiffness = 0.0;              // harmonic: V = stiffness x^2 / 2
  double force = 0.0;                  // uniform force: V = -force x
  std::vector<double> poly_coeffs;     // polynomial c0..c4

  PacketState initial;
  GridSpec grid;
  bool grid_spatial_given = false;

  double rtol = 1e-10;
  double atol = 1e-12;
  double tol_scale = 1.0;

  std::string out_dir = "out";
  bool write_csv = true;
  bool write_json = true;
  double sample_interval = 0.0;        // pde observable sampling; 0 = every step

  std::map<std::string, std::string> raw;  // parsed keys, echoed in the report

  Potential make_potential() const;
};

/// Parse and validate; throws ConfigError with the offending field path.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

/// Validation only (also called by parse_config).
void validate_config(const ScenarioConfig& cfg);

/// Apply `--vary`-style override "key=value" to a parsed key map.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

}  // namespace kostin

#endif  // KOSTIN_CONFIG_HPP
