#include "kostin/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kostin {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a finite number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
  return out;
}

void assign(ScenarioConfig& c, const std::string& key, const std::string& value) {
  if (key == "pipeline") {
    if (value == "moments") c.pipeline = Pipeline::moments;
    else if (value == "perturbation") c.pipeline = Pipeline::perturbation;
    else if (value == "pde") c.pipeline = Pipeline::pde;
    else if (value == "wigner") c.pipeline = Pipeline::wigner;
    else if (value == "cross_validate") c.pipeline = Pipeline::cross_validate;
    else throw ConfigError(key, "unknown pipeline '" + value + "'");
  } else if (key == "params.hbar") c.params.hbar = parse_number(key, value);
  else if (key == "params.mass") c.params.mass = parse_number(key, value);
  else if (key == "params.nu") c.params.nu = parse_number(key, value);
  else if (key == "potential.family") {
    if (value == "free") c.family = Potential::Family::free;
    else if (value == "harmonic") c.family = Potential::Family::harmonic;
    else if (value == "uniform_force") c.family = Potential::Family::uniform_force;
    else if (value == "polynomial") c.family = Potential::Family::polynomial;
    else throw ConfigError(key, "unknown family '" + value + "'");
  } else if (key == "potential.stiffness") c.stiffness = parse_number(key, value);
  else if (key == "potential.force") c.force = parse_number(key, value);
  else if (key == "potential.coeffs") c.poly_coeffs = parse_list(key, value);
  else if (key == "initial.t") c.initial.t = parse_number(key, value);
  else if (key == "initial.q") c.initial.q = parse_number(key, value);
  else if (key == "initial.qdot") c.initial.qdot = parse_number(key, value);
  else if (key == "initial.a") c.initial.a = parse_number(key, value);
  else if (key == "initial.adot") c.initial.adot = parse_number(key, value);
  else if (key == "grid.x_min") { c.grid.x_min = parse_number(key, value); c.grid_spatial_given = true; }
  else if (key == "grid.x_max") { c.grid.x_max = parse_number(key, value); c.grid_spatial_given = true; }
  else if (key == "grid.n_points") {
    double v = parse_number(key, value);
    if (v < 1 || v != std::floor(v)) throw ConfigError(key, "expected a positive integer");
    c.grid.n_points = static_cast<std::size_t>(v);
    c.grid_spatial_given = true;
  }
  else if (key == "grid.dt") c.grid.dt = parse_number(key, value);
  else if (key == "grid.t_end") c.grid.t_end = parse_number(key, value);
  else if (key == "tolerances.rtol") c.rtol = parse_number(key, value);
  else if (key == "tolerances.atol") c.atol = parse_number(key, value);
  else if (key == "tolerances.scale") c.tol_scale = parse_number(key, value);
  else if (key == "output.dir") c.out_dir = value;
  else if (key == "output.formats") {
    c.write_csv = value.find("csv") != std::string::npos;
    c.write_json = value.find("json") != std::string::npos;
    if (!c.write_csv && !c.write_json)
      throw ConfigError(key, "expected a list containing 'csv' and/or 'json'");
  } else if (key == "pde.sample_interval") c.sample_interval = parse_number(key, value);
  else throw ConfigError(key, "unknown key");
}

}  // namespace

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::moments: return "moments";
    case Pipeline::perturbation: return "perturbation";
    case Pipeline::pde: return "pde";
    case Pipeline::wigner: return "wigner";
    case Pipeline::cross_validate: return "cross_validate";
  }
  return "?";
}

Potential ScenarioConfig::make_potential() const {
  switch (family) {
    case Potential::Family::free: return Potential::free_particle();
    case Potential::Family::harmonic: return Potential::harmonic(stiffness);
    case Potential::Family::uniform_force: return Potential::uniform_force(force);
    case Potential::Family::polynomial: return Potential::polynomial(poly_coeffs);
    case Potential::Family::callable: break;
  }
  throw ConfigError("potential.family", "not constructible from a config file");
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno),
                        "expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    if (cfg.raw.count(key)) throw ConfigError(key, "duplicate key");
    assign(cfg, key, value);
    cfg.raw[key] = value;
  }
  validate_config(cfg);
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  return parse_config(in);
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  assign(cfg, key, value);
  cfg.raw[key] = value;
  validate_config(cfg);
}

void validate_config(const ScenarioConfig& cfg) {
  try {
    cfg.params.validate();
  } catch (const std::exception& e) {
    throw ConfigError("params", e.what());
  }
  try {
    cfg.initial.validate();
  } catch (const std::exception& e) {
    throw ConfigError("initial.a", e.what());
  }
  if (!(cfg.grid.dt > 0.0)) throw ConfigError("grid.dt", "must be positive");
  if (!(cfg.grid.t_end > cfg.initial.t))
    throw ConfigError("grid.t_end", "must exceed initial.t");
  if (!(cfg.rtol > 0.0)) throw ConfigError("tolerances.rtol", "must be positive");
  if (!(cfg.atol > 0.0)) throw ConfigError("tolerances.atol", "must be positive");
  if (!(cfg.tol_scale > 0.0)) throw ConfigError("tolerances.scale", "must be positive");
  if (cfg.family == Potential::Family::polynomial) {
    if (cfg.poly_coeffs.empty() || cfg.poly_coeffs.size() > 5)
      throw ConfigError("potential.coeffs", "polynomial needs 1..5 coefficients (degree <= 4)");
  }

  const bool needs_grid = cfg.pipeline == Pipeline::pde ||
                          cfg.pipeline == Pipeline::wigner ||
                          cfg.pipeline == Pipeline::cross_validate;
  if (needs_grid) {
    if (!cfg.grid_spatial_given)
      throw ConfigError("grid.x_min", "pipeline '" + to_string(cfg.pipeline) +
                                          "' requires the spatial grid");
    try {
      cfg.grid.validate();
    } catch (const std::exception& e) {
      throw ConfigError("grid", e.what());
    }
  }
  if (cfg.pipeline == Pipeline::perturbation || cfg.pipeline == Pipeline::cross_validate) {
    if (cfg.pipeline == Pipeline::perturbation && !(cfg.params.nu > 0.0))
      throw ConfigError("params.nu", "perturbation pipeline requires nu > 0");
    if (cfg.pipeline == Pipeline::perturbation &&
        cfg.family != Potential::Family::free &&
        cfg.family != Potential::Family::uniform_force)
      throw ConfigError("potential.family",
                        "perturbation pipeline requires a free or uniform-force potential");
  }
  if (cfg.pipeline == Pipeline::cross_validate &&
      cfg.family == Potential::Family::polynomial && cfg.poly_coeffs.size() > 3)
    throw ConfigError("potential.coeffs",
                      "cross_validate requires a quadratic-or-lower potential");
}

}  // namespace kostin
