#include "kostin/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "kostin/csv.hpp"
#include "kostin/moments.hpp"
#include "kostin/pde.hpp"
#include "kostin/perturbation.hpp"
#include "kostin/wigner.hpp"

namespace kostin {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Closed-form center of a damped harmonic oscillator
/// qdd + nu qd + (k/m) q = 0 (all three damping regimes).
double damped_oscillator_center(const PhysicalParams& p, double stiffness, double q0,
                                double qdot0, double t) {
  const double nu = p.nu;
  const double w02 = stiffness / p.mass;
  const double disc = 0.25 * nu * nu - w02;
  if (std::abs(disc) < 1e-12 * std::max(w02, nu * nu)) {
    // critically damped
    return std::exp(-0.5 * nu * t) * (q0 + (qdot0 + 0.5 * nu * q0) * t);
  }
  if (disc < 0.0) {
    const double wd = std::sqrt(-disc);
    return std::exp(-0.5 * nu * t) *
           (q0 * std::cos(wd * t) + (qdot0 + 0.5 * nu * q0) / wd * std::sin(wd * t));
  }
  const double s = std::sqrt(disc);
  const double r1 = -0.5 * nu + s, r2 = -0.5 * nu - s;
  const double A = (qdot0 - r2 * q0) / (r1 - r2);
  const double B = q0 - A;
  return A * std::exp(r1 * t) + B * std::exp(r2 * t);
}

struct LogLogFit {
  double exponent;
  double prefactor;
};

LogLogFit fit_power_law(std::span<const double> t, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double lx = std::log(t[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept)};
}

class ReportBuilder {
 public:
  explicit ReportBuilder(const ScenarioConfig& cfg) : cfg_(cfg) {
    json_["tool"] = "kostin";
    json_["version"] = kVersion;
    json_["timestamp"] = iso_timestamp();
    json_["pipeline"] = to_string(cfg.pipeline);
    ordered_json echo = ordered_json::object();
    for (const auto& [k, v] : cfg.raw) echo[k] = v;
    json_["config"] = echo;
    json_["checks"] = ordered_json::array();
    json_["measurements"] = ordered_json::object();
    json_["artifacts"] = ordered_json::array();
  }

  void check(const std::string& name, const std::string& oracle, double tolerance,
             double measured, bool smaller_is_pass = true) {
    double tol = tolerance * cfg_.tol_scale;
    bool pass = smaller_is_pass ? (measured <= tol) : (measured >= tol);
    checks_.push_back({name, oracle, tol, measured, pass});
    ordered_json j;
    j["name"] = name;
    j["oracle"] = oracle;
    j["tolerance"] = tol;
    j["measured"] = measured;
    j["pass"] = pass;
    json_["checks"].push_back(j);
  }

  void measurement(const std::string& name, const ordered_json& value) {
    json_["measurements"][name] = value;
  }

  void artifact(const std::string& name) {
    artifacts_.push_back(name);
    json_["artifacts"].push_back(name);
  }

  ScenarioReport finish(int forced_code = -1, const std::string& error = {}) {
    bool all_pass = std::all_of(checks_.begin(), checks_.end(),
                                [](const CheckResult& c) { return c.pass; });
    int code = forced_code >= 0 ? forced_code : (all_pass ? 0 : 1);
    json_["status"] = code == 0 ? "ok" : (code == 1 ? "check_failed" : "numerical_error");
    if (!error.empty()) json_["error"] = error;
    ScenarioReport rep;
    rep.exit_code = code;
    rep.checks = checks_;
    rep.artifacts = artifacts_;
    rep.json = json_;
    return rep;
  }

 private:
  const ScenarioConfig& cfg_;
  ordered_json json_;
  std::vector<CheckResult> checks_;
  std::vector<std::string> artifacts_;
};

void write_report_file(const ScenarioConfig& cfg, const ScenarioReport& rep) {
  if (!cfg.write_json) return;
  fs::create_directories(cfg.out_dir);
  std::ofstream os(fs::path(cfg.out_dir) / "report.json");
  os << rep.json.dump(2) << '\n';
}

std::ofstream open_artifact(const ScenarioConfig& cfg, ReportBuilder& rb,
                            const std::string& name) {
  fs::create_directories(cfg.out_dir);
  rb.artifact(name);
  return std::ofstream(fs::path(cfg.out_dir) / name);
}

// --------------------------------------------------------------------------
// moments pipeline
// --------------------------------------------------------------------------

ScenarioReport run_moments(const ScenarioConfig& cfg) {
  ReportBuilder rb(cfg);
  Potential pot = cfg.make_potential();
  MomentTrajectory traj =
      integrate_moments(cfg.params, pot, cfg.initial, cfg.grid, cfg.rtol, cfg.atol);

  if (cfg.write_csv) {
    auto os = open_artifact(cfg, rb, "trajectory.csv");
    write_trajectory_csv(os, traj);
  }

  double a_min = traj.samples.front().a;
  for (const auto& s : traj.samples) a_min = std::min(a_min, s.a);
  rb.check("width_positive", "repulsive 1/a^3 term keeps a above the floor", kWidthFloor,
           a_min, /*smaller_is_pass=*/false);

  const bool is_free = cfg.family == Potential::Family::free;
  const bool is_uniform = cfg.family == Potential::Family::uniform_force;
  if ((is_free || is_uniform) && cfg.params.nu == 0.0) {
    double dev = 0.0;
    for (const auto& s : traj.samples) {
      double ref = conservative_width_exact(cfg.params, cfg.initial.a, cfg.initial.adot,
                                            s.t - cfg.initial.t);
      dev = std::max(dev, std::abs(s.a - ref) / ref);
    }
    rb.check("conservative_oracle", "closed-form conservative free-particle width", 1e-8, dev);
  }
  if (is_free && cfg.params.nu > 0.0) {
    double dev = 0.0;
    for (const auto& s : traj.samples) {
      CenterState ref = free_particle_center(cfg.params, cfg.initial.q, cfg.initial.qdot,
                                             s.t - cfg.initial.t);
      double scale = std::max(std::abs(ref.q), s.a);
      dev = std::max(dev, std::abs(s.q - ref.q) / scale);
    }
    rb.check("center_oracle", "closed-form damped free-particle center", 1e-8, dev);
  }
  if ((is_free || is_uniform) && cfg.params.nu > 0.0) {
    double max_rise = 0.0;
    for (std::size_t i = 1; i < traj.steps.size(); ++i)
      max_rise = std::max(max_rise, lyapunov_energy(cfg.params, traj.steps[i]) -
                                        lyapunov_energy(cfg.params, traj.steps[i - 1]));
    rb.check("lyapunov_monotone", "width energy non-increasing at accepted steps", 1e-12,
             max_rise);

    // measured decay coefficient dE/dt = -c nu adot^2, via least squares on
    // the accepted steps
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i + 1 < traj.steps.size(); ++i) {
      const auto& sm = traj.steps[i - 1];
      const auto& sp = traj.steps[i + 1];
      double dt = sp.t - sm.t;
      if (dt <= 0.0) continue;
      double dE = (lyapunov_energy(cfg.params, sp) - lyapunov_energy(cfg.params, sm)) / dt;
      double w = traj.steps[i].adot * traj.steps[i].adot;
      num += -dE * w;
      den += w * w;
    }
    if (den > 0.0)
      rb.measurement("lyapunov_decay_coefficient_over_nu",
                     num / den / cfg.params.nu);
  }
  if (cfg.family == Potential::Family::harmonic) {
    double dev = 0.0;
    for (const auto& s : traj.samples) {
      double ref = damped_oscillator_center(cfg.params, cfg.stiffness, cfg.initial.q,
                                            cfg.initial.qdot, s.t - cfg.initial.t);
      double scale = std::max(std::abs(ref), s.a);
      dev = std::max(dev, std::abs(s.q - ref) / scale);
    }
    rb.check("ehrenfest_oracle", "closed-form damped harmonic-oscillator center", 1e-8, dev);
  }
  if (is_free && cfg.params.nu > 0.0) {
    // asymptotic power-law fit over the trailing decade, when deep enough
    double tau_end = cfg.params.nu * traj.samples.back().t;
    if (tau_end >= 100.0) {
      std::vector<double> ts, as;
      for (const auto& s : traj.samples) {
        if (cfg.params.nu * s.t >= tau_end / 10.0 && s.t > 0.0) {
          ts.push_back(s.t);
          as.push_back(s.a);
        }
      }
      if (ts.size() >= 8) {
        LogLogFit fit = fit_power_law(ts, as);
        rb.measurement("asymptotic_exponent", fit.exponent);
        double pref_ref = std::pow(cfg.params.hbar * cfg.params.hbar /
                                       (cfg.params.mass * cfg.params.mass * cfg.params.nu),
                                   0.25);
        rb.measurement("asymptotic_prefactor_ratio", fit.prefactor / pref_ref);
        if (tau_end >= 1000.0)
          rb.check("asymptotic_exponent", "log-log fit of a(t) vs the t^{1/4} law", 0.01,
                   std::abs(fit.exponent - 0.25));
      }
    }
  }
  return rb.finish();
}

// --------------------------------------------------------------------------
// perturbation pipeline
// --------------------------------------------------------------------------

ScenarioReport run_perturbation(const ScenarioConfig& cfg) {
  ReportBuilder rb(cfg);
  ScaledWidthPoint scaled =
      rescale(cfg.params, {cfg.initial.t, cfg.initial.a, cfg.initial.adot});
  ConstantsSolution sol = solve_constants(scaled.alpha, scaled.alpha_dot);

  ordered_json roots = ordered_json::array();
  double worst_residual = 0.0, worst_ic = 0.0;
  for (const auto& r : sol.roots) {
    ordered_json j;
    j["branch"] = r.branch_index;
    j["c1"] = r.c1;
    j["c2"] = r.c2;
    roots.push_back(j);
    worst_residual = std::max(worst_residual,
                              std::abs(constants_residual(r.c1, scaled.alpha, scaled.alpha_dot)));
    worst_ic = std::max({worst_ic, std::abs(perturbative_width(r, 0.0) - scaled.alpha),
                         std::abs(perturbative_width_dot(r, 0.0) - scaled.alpha_dot)});
  }
  rb.measurement("roots", roots);
  if (sol.boundary_warning) rb.measurement("scan_boundary_warning", true);
  rb.check("roots_residual", "scalar residual of the eliminated constants system", 1e-12,
           worst_residual);
  rb.check("roots_reproduce_initial_conditions", "back-substitution into a(0), adot(0)",
           1e-10, worst_ic);

  // dimensionless oracle: the damped Pinney equation with hbar = m = nu = 1
  const double tau_end = std::max(cfg.params.nu * cfg.grid.t_end, 10.0);
  PhysicalParams unit{1.0, 1.0, 1.0};
  PacketState init0;
  init0.t = 0.0;
  init0.a = scaled.alpha;
  init0.adot = scaled.alpha_dot;
  GridSpec ggrid = cfg.grid;
  ggrid.dt = tau_end / 2000.0;
  ggrid.t_end = tau_end;
  ggrid.x_min = -1.0;
  ggrid.x_max = 1.0;
  ggrid.n_points = 16;
  MomentTrajectory oracle =
      integrate_moments(unit, Potential::free_particle(), init0, ggrid, 1e-12, 1e-14);

  std::vector<PerturbationRow> rows;
  std::vector<double> branch_dev(sol.roots.size(), 0.0);
  for (const auto& s : oracle.samples) {
    const auto& best = sol.roots.front();
    double a0v = alpha0(best.c1, s.t);
    double a1v = alpha1(best.c1, best.c2, s.t);
    double w = a0v + a1v;
    rows.push_back({s.t, a0v, a1v, w, s.a, std::abs(w - s.a) / s.a});
    for (std::size_t b = 0; b < sol.roots.size(); ++b) {
      if (s.t < kPerturbationTauMin) continue;
      double wb = perturbative_width(sol.roots[b], s.t);
      branch_dev[b] = std::max(branch_dev[b], std::abs(wb - s.a) / s.a);
    }
  }
  if (cfg.write_csv) {
    auto os = open_artifact(cfg, rb, "perturbation.csv");
    write_perturbation_csv(os, rows);
  }
  ordered_json devs = ordered_json::array();
  for (double d : branch_dev) devs.push_back(d);
  rb.measurement("post_transient_deviation_per_branch", devs);
  rb.measurement("validity_tau_min", kPerturbationTauMin);
  rb.measurement("series_order", kPerturbationOrder);

  if (sol.roots.size() >= 2) {
    // the first branch (largest c1) must track the numeric solution best
    double margin = branch_dev[0];
    for (std::size_t b = 1; b < sol.roots.size(); ++b)
      margin = std::min(margin, branch_dev[b] - branch_dev[0]);
    rb.check("branch_ordering", "first branch deviates least from the numeric width", 0.0,
             margin, /*smaller_is_pass=*/false);
  }
  // every branch must land on the t^{1/4} asymptote
  double asy_dev = 0.0;
  double tau_far = std::max(1e4, 100.0 * tau_end);
  for (const auto& r : sol.roots)
    asy_dev = std::max(asy_dev,
                       std::abs(perturbative_width(r, tau_far) / std::pow(tau_far, 0.25) - 1.0));
  rb.check("asymptote_match", "a ~ tau^{1/4} at tau = " + format_double(tau_far), 0.01,
           asy_dev);
  return rb.finish();
}

// --------------------------------------------------------------------------
// pde pipeline
// --------------------------------------------------------------------------

ScenarioReport run_pde(const ScenarioConfig& cfg) {
  ReportBuilder rb(cfg);
  Potential pot = cfg.make_potential();
  GridWavefunction wf = gaussian_wavefunction(cfg.params, cfg.initial, cfg.grid);

  double max_kurtosis = 0.0;
  EvolveOptions opts;
  opts.sample_interval = cfg.sample_interval;
  opts.on_sample = [&](const GridWavefunction& w) {
    max_kurtosis = std::max(max_kurtosis, std::abs(density_excess_kurtosis(w)));
  };
  KostinEvolver evolver(cfg.params, pot, cfg.grid);
  ObservableSeries series = evolver.evolve(wf, opts);

  if (cfg.write_csv) {
    auto os = open_artifact(cfg, rb, "observables.csv");
    write_observables_csv(os, series);
    auto snap = open_artifact(cfg, rb, "snapshot.csv");
    write_snapshot_csv(snap, wf, madelung_decompose(cfg.params, wf, 1e-12));
  }

  if (series.truncated) {
    rb.measurement("truncated_at", series.rows.empty() ? cfg.initial.t : series.rows.back().t);
    return rb.finish(3, series.error);
  }

  double norm_drift = 0.0;
  double min_product = std::numeric_limits<double>::infinity();
  for (const auto& r : series.rows) {
    norm_drift = std::max(norm_drift, std::abs(r.norm - 1.0));
    min_product = std::min(min_product, r.delta_x * r.delta_p);
  }
  rb.check("norm_conservation", "norm-preserving split-step contract", 1e-6, norm_drift);
  rb.check("uncertainty_bound", "delta_x delta_p >= hbar/2",
           0.5 * cfg.params.hbar - 1e-12, min_product, /*smaller_is_pass=*/false);

  const bool quadratic_or_lower =
      cfg.family != Potential::Family::polynomial || cfg.poly_coeffs.size() <= 3;
  if (quadratic_or_lower) {
    rb.check("gaussian_closure", "density excess kurtosis stays Gaussian", 1e-3, max_kurtosis);

    MomentTrajectory traj =
        integrate_moments(cfg.params, pot, cfg.initial, cfg.grid, 1e-12, 1e-14);
    // dense sampling of the ODE pair at the PDE sample times
    double dev_center = 0.0, dev_width = 0.0;
    std::size_t j = 0;
    for (const auto& r : series.rows) {
      while (j + 1 < traj.samples.size() && traj.samples[j].t < r.t - 1e-12) ++j;
      const auto& s = traj.samples[j];
      if (std::abs(s.t - r.t) > 1e-9 * std::max(1.0, std::abs(r.t))) continue;
      dev_width = std::max(dev_width, std::abs(r.delta_x - s.a) / s.a);
      dev_center =
          std::max(dev_center, std::abs(r.mean_x - s.q) / std::max(std::abs(s.q), s.a));
    }
    double width_tol = cfg.params.nu > 0.0 ? 1e-3 : 1e-4;
    rb.check("width_oracle", "Gaussian-reduction width from the moment ODEs", width_tol,
             dev_width);
    rb.check("center_oracle", "Ehrenfest center from the moment ODEs", 1e-4, dev_center);
  }
  return rb.finish();
}

// --------------------------------------------------------------------------
// wigner pipeline
// --------------------------------------------------------------------------

ScenarioReport run_wigner(const ScenarioConfig& cfg) {
  ReportBuilder rb(cfg);
  GridWavefunction wf = gaussian_wavefunction(cfg.params, cfg.initial, cfg.grid);
  std::vector<double> p_axis = default_momentum_axis(cfg.params, wf);
  WignerGrid grid = wigner_numeric(cfg.params, wf, p_axis);

  if (cfg.write_csv) {
    auto os = open_artifact(cfg, rb, "wigner.csv");
    write_wigner_csv(os, grid);
  }

  const double inv_pi_h = 1.0 / (std::numbers::pi * cfg.params.hbar);
  double sup_dev = 0.0;
  for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix)
    for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip)
      sup_dev = std::max(sup_dev, std::abs(grid.at(ix, ip) -
                                           wigner_gaussian_analytic(cfg.params, cfg.initial,
                                                                    grid.x_axis[ix],
                                                                    grid.p_axis[ip])));
  rb.check("analytic_agreement", "closed Gaussian Wigner form", 1e-6 * inv_pi_h, sup_dev);
  rb.check("normalization", "phase-space mass equals one", 1e-6,
           std::abs(grid.total_mass() - 1.0));
  rb.check("imag_residue", "transform is real by construction", 1e-9, grid.max_imag_residue);

  // x-marginal against the grid density at the whole-grid points
  double dp = grid.p_axis[1] - grid.p_axis[0];
  double marg_dev = 0.0;
  for (std::size_t i = 0; i < wf.psi.size(); ++i) {
    double m = 0.0;
    for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) m += grid.at(2 * i, ip);
    marg_dev = std::max(marg_dev, std::abs(m * dp - std::norm(wf.psi[i])));
  }
  rb.check("marginal_x", "momentum marginal reproduces |psi|^2", 1e-6, marg_dev);

  Uncertainty u = uncertainties(cfg.params, cfg.initial);
  rb.measurement("delta_x", u.dx);
  rb.measurement("delta_p", u.dp);
  rb.check("uncertainty_bound", "delta_x delta_p >= hbar/2",
           0.5 * cfg.params.hbar - 1e-12, u.product, /*smaller_is_pass=*/false);
  rb.measurement("ellipse_area_at_1_over_e", ellipse_area(cfg.params, cfg.initial,
                                                          std::exp(-1.0)));
  return rb.finish();
}

// --------------------------------------------------------------------------
// cross-validate pipeline
// --------------------------------------------------------------------------

ScenarioReport run_cross_validate(const ScenarioConfig& cfg) {
  ReportBuilder rb(cfg);
  Potential pot = cfg.make_potential();

  MomentTrajectory traj =
      integrate_moments(cfg.params, pot, cfg.initial, cfg.grid, 1e-12, 1e-14);
  GridWavefunction wf = gaussian_wavefunction(cfg.params, cfg.initial, cfg.grid);
  KostinEvolver evolver(cfg.params, pot, cfg.grid);
  EvolveOptions opts;
  opts.sample_interval = cfg.sample_interval;
  ObservableSeries series = evolver.evolve(wf, opts);
  if (series.truncated) return rb.finish(3, series.error);

  if (cfg.write_csv) {
    auto os = open_artifact(cfg, rb, "trajectory.csv");
    write_trajectory_csv(os, traj);
    auto os2 = open_artifact(cfg, rb, "observables.csv");
    write_observables_csv(os2, series);
  }

  double dev_center = 0.0, dev_width = 0.0;
  std::size_t j = 0;
  double min_product = std::numeric_limits<double>::infinity();
  for (const auto& r : series.rows) {
    min_product = std::min(min_product, r.delta_x * r.delta_p);
    while (j + 1 < traj.samples.size() && traj.samples[j].t < r.t - 1e-12) ++j;
    const auto& s = traj.samples[j];
    if (std::abs(s.t - r.t) > 1e-9 * std::max(1.0, std::abs(r.t))) continue;
    dev_width = std::max(dev_width, std::abs(r.delta_x - s.a) / s.a);
    dev_center =
        std::max(dev_center, std::abs(r.mean_x - s.q) / std::max(std::abs(s.q), s.a));
  }
  for (const auto& s : traj.samples)
    min_product = std::min(min_product, uncertainties(cfg.params, s).product);

  rb.measurement("pde_vs_ode_center", dev_center);
  rb.measurement("pde_vs_ode_width", dev_width);
  rb.check("pde_vs_ode_width", "Gaussian-reduction width from the moment ODEs", 1e-3,
           dev_width);

  if (cfg.family == Potential::Family::harmonic) {
    double dev = 0.0;
    for (const auto& r : series.rows) {
      double ref = damped_oscillator_center(cfg.params, cfg.stiffness, cfg.initial.q,
                                            cfg.initial.qdot, r.t - cfg.initial.t);
      dev = std::max(dev, std::abs(r.mean_x - ref) /
                              std::max(std::abs(ref), cfg.initial.a));
    }
    rb.check("pde_vs_closed_form_center", "closed-form damped harmonic-oscillator center",
             1e-4, dev);
  } else {
    rb.check("pde_vs_ode_center", "Ehrenfest center from the moment ODEs", 1e-3, dev_center);
  }
  rb.check("uncertainty_min", "delta_x delta_p >= hbar/2",
           0.5 * cfg.params.hbar - 1e-12, min_product, /*smaller_is_pass=*/false);

  if ((cfg.family == Potential::Family::free ||
       cfg.family == Potential::Family::uniform_force) &&
      cfg.params.nu > 0.0 && cfg.initial.t == 0.0) {
    ScaledWidthPoint scaled =
        rescale(cfg.params, {cfg.initial.t, cfg.initial.a, cfg.initial.adot});
    try {
      ConstantsSolution sol = solve_constants(scaled.alpha, scaled.alpha_dot);
      double dev = 0.0;
      for (const auto& s : traj.samples) {
        double tau = cfg.params.nu * s.t;
        if (tau < kPerturbationTauMin) continue;
        double w = perturbative_width(sol.roots.front(), tau);
        WidthPoint phys = unrescale(cfg.params, {tau, w, 0.0});
        dev = std::max(dev, std::abs(phys.a - s.a) / s.a);
      }
      rb.measurement("perturbation_vs_ode_width", dev);
    } catch (const NoRootError&) {
      rb.measurement("perturbation_vs_ode_width", "no admissible perturbative branch");
    }
  }
  return rb.finish();
}

}  // namespace

ScenarioReport cross_validate(const ScenarioConfig& cfg) {
  validate_config(cfg);
  ScenarioReport rep = run_cross_validate(cfg);
  write_report_file(cfg, rep);
  return rep;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  ScenarioReport rep;
  try {
    switch (cfg.pipeline) {
      case Pipeline::moments: rep = run_moments(cfg); break;
      case Pipeline::perturbation: rep = run_perturbation(cfg); break;
      case Pipeline::pde: rep = run_pde(cfg); break;
      case Pipeline::wigner: rep = run_wigner(cfg); break;
      case Pipeline::cross_validate: rep = run_cross_validate(cfg); break;
    }
  } catch (const SimulationError& e) {
    ReportBuilder rb(cfg);
    rep = rb.finish(3, e.what());
  }
  write_report_file(cfg, rep);
  return rep;
}

}  // namespace kostin
