#ifndef KOSTIN_PDE_HPP
#define KOSTIN_PDE_HPP

// Grid solver for the full nonlinear Kostin equation
//
//   i hbar dPsi/dt = -(hbar^2/2m) Psi_xx
//                  + [V - i (hbar nu/2) ln(Psi/Psi*) + i (hbar nu/2) <ln(Psi/Psi*)>] Psi
//
// via Strang splitting: the local potential-plus-dissipation factor is a pure
// phase (ln(Psi/Psi*) = 2iS/hbar with S the unwrapped Madelung phase) whose
// substep flow dS/dt = -(V + nu S - nu <S>) is linear in S and is applied in
// closed form; the kinetic factor is applied spectrally.  Both factors
// preserve the discrete norm to round-off.

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kostin/core.hpp"

namespace kostin {

struct GridWavefunction {
  GridSpec grid;
  double t = 0.0;
  std::vector<std::complex<double>> psi;

  double dx() const { return grid.dx(); }
  double x(std::size_t i) const { return grid.x_min + grid.dx() * static_cast<double>(i); }
  /// Discrete norm sum |psi|^2 dx.
  double norm() const;
  /// max of |psi|^2 dx over the two outermost points.
  double boundary_density() const;
};

/// Madelung fields rho = |psi|^2, S = hbar * unwrapped arg(psi), v = S'/m.
/// S is defined on the connected region around the density maximum where
/// rho > rho_cut and continued by its edge values outside; v is zero outside.
struct HydroFields {
  std::vector<double> rho, S, v;
  std::vector<char> valid;
  std::size_t first_valid = 0, last_valid = 0;
};

/// Sample the Gaussian packet
///   Psi = (2 pi a^2)^{-1/4} exp[-(x-q)^2/(4a^2)]
///         exp[(i m/hbar)((adot/2a)(x-q)^2 + qdot (x-q))]
/// on the grid and renormalize the discrete norm to exactly one.  Throws
/// GridError when the grid is too narrow (less than 8a on either side of q,
/// renormalization correction beyond 1e-9, or boundary density >= 1e-10).
GridWavefunction gaussian_wavefunction(const PhysicalParams& params,
                                       const PacketState& state, const GridSpec& grid);

/// Decompose psi into hydrodynamic fields.  The phase is unwrapped sweeping
/// outward from the density maximum, adding 2 pi multiples so adjacent jumps
/// stay in (-pi, pi]; a jump of magnitude exactly pi inside the unmasked
/// region throws UnwrapError.
HydroFields madelung_decompose(const PhysicalParams& params, const GridWavefunction& wf,
                               double rho_cut);

struct Observables {
  double t = 0.0;
  double norm = 0.0;
  double mean_x = 0.0;
  double delta_x = 0.0;
  double mean_p = 0.0;
  double delta_p = 0.0;
  double mean_S = 0.0;
};

/// Grid observables; momentum moments are taken in the spectral domain.
Observables measure(const PhysicalParams& params, const GridWavefunction& wf);

/// Excess kurtosis of the position density (zero for a Gaussian).
double density_excess_kurtosis(const GridWavefunction& wf);

struct ObservableSeries {
  std::vector<Observables> rows;
  bool truncated = false;
  std::string error;
};

struct EvolveOptions {
  /// Observable sampling interval; 0 samples every step.
  double sample_interval = 0.0;
  /// Include the <S> gauge term of the equation (it only shifts the global
  /// phase; disabling it must leave |psi|^2 unchanged).
  bool include_mean_phase_term = true;
  /// Called at every sampled time with the current state.
  std::function<void(const GridWavefunction&)> on_sample;
};

/// Owns the spectral plans and workspaces for one evolution.
class KostinEvolver {
 public:
  KostinEvolver(const PhysicalParams& params, Potential pot, const GridSpec& grid);
  ~KostinEvolver();
  KostinEvolver(const KostinEvolver&) = delete;
  KostinEvolver& operator=(const KostinEvolver&) = delete;

  /// One Strang step of size dt.  Throws NormDriftError if the one-step norm
  /// drift exceeds 1e-9.
  void step(GridWavefunction& wf, double dt,
            bool include_mean_phase_term = true) const;

  /// Fixed-step evolution from wf.t to grid.t_end with step grid.dt.  On a
  /// numerical failure the partial series is returned with truncated = true.
  ObservableSeries evolve(GridWavefunction& wf, const EvolveOptions& opts = {}) const;

  Observables measure(const GridWavefunction& wf) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience one-shot step (plans are rebuilt each call).
GridWavefunction kostin_step(const PhysicalParams& params, const Potential& pot,
                             const GridWavefunction& wf, double dt);

/// Convenience evolution driver.
ObservableSeries evolve(const PhysicalParams& params, const Potential& pot,
                        const GridWavefunction& wf0, const GridSpec& grid,
                        const EvolveOptions& opts = {});

}  // namespace kostin

#endif  // KOSTIN_PDE_HPP
