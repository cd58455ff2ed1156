#include "kostin/csv.hpp"

#include <charconv>

namespace kostin {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_double(values[i]);
  }
  os << '\n';
}

void write_csv_header(std::ostream& os, std::span<const std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ',';
    os << names[i];
  }
  os << '\n';
}

void write_trajectory_csv(std::ostream& os, const MomentTrajectory& traj) {
  const std::string names[] = {"t", "q", "qdot", "a", "adot", "E_w"};
  write_csv_header(os, names);
  for (const auto& s : traj.samples) {
    double row[] = {s.t, s.q, s.qdot, s.a, s.adot, lyapunov_energy(traj.params, s)};
    write_csv_row(os, row);
  }
}

void write_observables_csv(std::ostream& os, const ObservableSeries& series) {
  const std::string names[] = {"t", "norm", "mean_x", "delta_x",
                               "mean_p", "delta_p", "mean_S"};
  write_csv_header(os, names);
  for (const auto& r : series.rows) {
    double row[] = {r.t, r.norm, r.mean_x, r.delta_x, r.mean_p, r.delta_p, r.mean_S};
    write_csv_row(os, row);
  }
}

void write_snapshot_csv(std::ostream& os, const GridWavefunction& wf,
                        const HydroFields& fields) {
  const std::string names[] = {"x", "re_psi", "im_psi", "rho", "S", "v"};
  write_csv_header(os, names);
  for (std::size_t i = 0; i < wf.psi.size(); ++i) {
    double row[] = {wf.x(i),      wf.psi[i].real(), wf.psi[i].imag(),
                    fields.rho[i], fields.S[i],      fields.v[i]};
    write_csv_row(os, row);
  }
}

void write_perturbation_csv(std::ostream& os, std::span<const PerturbationRow> rows) {
  const std::string names[] = {"tau",   "alpha0",       "alpha1",
                               "width", "oracle_width", "rel_deviation"};
  write_csv_header(os, names);
  for (const auto& r : rows) {
    double row[] = {r.tau, r.alpha0, r.alpha1, r.width, r.oracle_width, r.rel_deviation};
    write_csv_row(os, row);
  }
}

void write_wigner_csv(std::ostream& os, const WignerGrid& grid, bool gnuplot) {
  const std::size_t np = grid.p_axis.size();
  if (gnuplot) {
    // gnuplot "nonuniform matrix": first row is <n_cols> followed by the x
    // (column) coordinates; each following row is p then f(x, p) per column
    os << np;
    for (double p : grid.p_axis) os << ' ' << format_double(p);
    os << '\n';
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
      os << format_double(grid.x_axis[ix]);
      for (std::size_t ip = 0; ip < np; ++ip)
        os << ' ' << format_double(grid.at(ix, ip));
      os << '\n';
    }
    return;
  }
  os << "x\\p";
  for (double p : grid.p_axis) os << ',' << format_double(p);
  os << '\n';
  for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
    os << format_double(grid.x_axis[ix]);
    for (std::size_t ip = 0; ip < np; ++ip)
      os << ',' << format_double(grid.at(ix, ip));
    os << '\n';
  }
}

}  // namespace kostin
