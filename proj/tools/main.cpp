// kostin: scenario runner for the Kostin-equation simulation library.
//
//   kostin run <config>       run the configured pipeline, write artifacts
//   kostin validate <config>  parse and validate only
//   kostin sweep <config> --vary key=a:b:n   parameter sweep
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 config error,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kostin/csv.hpp"
#include "kostin/scenario.hpp"

namespace {

void print_checks(const kostin::ScenarioReport& rep) {
  for (const auto& c : rep.checks)
    std::printf("%-38s %s  measured %.6g (tolerance %.3g, oracle: %s)\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.measured, c.tolerance, c.oracle.c_str());
  if (!rep.checks.empty())
    std::printf("%zu/%zu checks passed\n",
                static_cast<std::size_t>(
                    std::count_if(rep.checks.begin(), rep.checks.end(),
                                  [](const kostin::CheckResult& c) { return c.pass; })),
                rep.checks.size());
}

struct SweepSpec {
  std::string key;
  double lo = 0.0, hi = 0.0;
  std::size_t n = 0;
};

SweepSpec parse_vary(const std::string& arg) {
  auto eq = arg.find('=');
  if (eq == std::string::npos)
    throw kostin::ConfigError("--vary", "expected key=a:b:n, got '" + arg + "'");
  SweepSpec s;
  s.key = arg.substr(0, eq);
  std::string rest = arg.substr(eq + 1);
  auto c1 = rest.find(':');
  auto c2 = rest.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw kostin::ConfigError("--vary", "expected key=a:b:n, got '" + arg + "'");
  try {
    s.lo = std::stod(rest.substr(0, c1));
    s.hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    s.n = std::stoul(rest.substr(c2 + 1));
  } catch (const std::exception&) {
    throw kostin::ConfigError("--vary", "malformed range in '" + arg + "'");
  }
  if (s.n < 1) throw kostin::ConfigError("--vary", "need at least one sweep point");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kostin-equation simulations: Gaussian moment dynamics, "
               "free-particle perturbation theory, nonlinear PDE evolution "
               "and Wigner diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format, vary;
  double tol_scale = 1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "scenario config file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--format", format, "output formats: csv, json or csv,json");
    cmd->add_option("--tol-scale", tol_scale, "scale factor applied to check tolerances");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run the configured pipeline");
  add_common(cmd_run);
  CLI::App* cmd_validate = app.add_subcommand("validate", "parse and validate the config");
  cmd_validate->add_option("config", config_path, "scenario config file")->required();
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a one-parameter sweep");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--vary", vary, "key=a:b:n linear sweep of one numeric key")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    kostin::ScenarioConfig cfg = kostin::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!format.empty()) {
      cfg.write_csv = format.find("csv") != std::string::npos;
      cfg.write_json = format.find("json") != std::string::npos;
      if (!cfg.write_csv && !cfg.write_json)
        throw kostin::ConfigError("--format", "expected csv, json or csv,json");
    }
    cfg.tol_scale = tol_scale;

    if (cmd_validate->parsed()) {
      std::printf("ok: %s\n", config_path.c_str());
      return 0;
    }

    if (cmd_run->parsed()) {
      kostin::ScenarioReport rep = kostin::run_scenario(cfg);
      print_checks(rep);
      if (rep.json.contains("error"))
        std::fprintf(stderr, "error: %s\n",
                     rep.json["error"].get<std::string>().c_str());
      return rep.exit_code;
    }

    // sweep
    SweepSpec spec = parse_vary(vary);
    int worst = 0;
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream summary(std::filesystem::path(cfg.out_dir) / "sweep_summary.csv");
    summary << "index," << spec.key << ",exit_code,checks_passed,checks_total\n";
    for (std::size_t i = 0; i < spec.n; ++i) {
      double value = spec.n == 1
                         ? spec.lo
                         : spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                                         static_cast<double>(spec.n - 1);
      kostin::ScenarioConfig run_cfg = cfg;
      kostin::apply_override(run_cfg, spec.key, kostin::format_double(value));
      char sub[32];
      std::snprintf(sub, sizeof(sub), "sweep_%03zu", i);
      run_cfg.out_dir = (std::filesystem::path(cfg.out_dir) / sub).string();
      kostin::ScenarioReport rep = kostin::run_scenario(run_cfg);
      std::size_t passed = static_cast<std::size_t>(
          std::count_if(rep.checks.begin(), rep.checks.end(),
                        [](const kostin::CheckResult& c) { return c.pass; }));
      summary << i << ',' << kostin::format_double(value) << ',' << rep.exit_code << ','
              << passed << ',' << rep.checks.size() << '\n';
      std::printf("sweep %zu: %s = %s -> exit %d (%zu/%zu checks)\n", i, spec.key.c_str(),
                  kostin::format_double(value).c_str(), rep.exit_code, passed,
                  rep.checks.size());
      worst = std::max(worst, rep.exit_code);
    }
    return worst;
  } catch (const kostin::ConfigError& e) {
    std::fprintf(stderr, "config error at %s\n", e.what());
    return 2;
  } catch (const kostin::SimulationError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
