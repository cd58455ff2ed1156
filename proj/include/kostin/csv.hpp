#ifndef KOSTIN_CSV_HPP
#define KOSTIN_CSV_HPP

// Plain-text CSV artifacts: header row, shortest round-trip double
// formatting, '.' decimal separator (locale independent).

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kostin/moments.hpp"
#include "kostin/pde.hpp"
#include "kostin/wigner.hpp"

namespace kostin {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

void write_csv_row(std::ostream& os, std::span<const double> values);
void write_csv_header(std::ostream& os, std::span<const std::string> names);

/// Columns t, q, qdot, a, adot, E_w.
void write_trajectory_csv(std::ostream& os, const MomentTrajectory& traj);

/// Columns t, norm, mean_x, delta_x, mean_p, delta_p, mean_S.
void write_observables_csv(std::ostream& os, const ObservableSeries& series);

/// Columns x, re_psi, im_psi, rho, S, v at one snapshot time.
void write_snapshot_csv(std::ostream& os, const GridWavefunction& wf,
                        const HydroFields& fields);

/// One row per dimensionless comparison point:
/// tau, alpha0, alpha1, width, oracle_width, rel_deviation.
struct PerturbationRow {
  double tau, alpha0, alpha1, width, oracle_width, rel_deviation;
};
void write_perturbation_csv(std::ostream& os, std::span<const PerturbationRow> rows);

/// Matrix with axis header rows: first row "x\\p" then the p axis; each
/// following row starts with x.  `gnuplot = true` emits the nonuniform-matrix
/// layout gnuplot understands.
void write_wigner_csv(std::ostream& os, const WignerGrid& grid, bool gnuplot = false);

}  // namespace kostin

#endif  // KOSTIN_CSV_HPP
