#pragma once

#include <span>
#include <vector>

#include "pmx/diagnostics.hpp"
#include "pmx/grid.hpp"
#include "pmx/state.hpp"
#include "pmx/system.hpp"

namespace pmx {

/// Midpoint-rule energy
///   E = dx sum_j [ sum_i (u_i^2/2 + V_i u_i + u_i (W_i * u_i)/2) + delta sum_{i<k} u_i u_k ].
double energy(const DensityField& u, const SystemSpec& spec, const Grid1D& grid);
inline double energy(const State& state, const SystemSpec& spec, const Grid1D& grid) {
  return energy(state.u, spec, grid);
}

/// Constrained minimizer of the energy. On the support of each species
/// u_i + V_i + W_i*u_i + delta sum_{j!=i} u_j = c_i.
struct SteadyState {
  DensityField u_inf;
  std::vector<double> lagrange_c;
  int iterations = 0;
  double residual = 0.0;  // L-inf change produced by one further undamped sweep
  bool converged = false;
};

struct SteadyStateOptions {
  double tol = 1e-10;
  int max_iter = 200000;
  double damping = 0.5;  // theta in u <- (1 - theta) u + theta T(u)
};

/// Damped projected fixed point on the KKT system. Each sweep solves the mass
/// constraint of every species for c_i by bisection. Requires |delta| < 1.
/// Non-convergence is reported through `converged`, not thrown; a failed
/// bisection bracket throws SolverError.
SteadyState steady_state(const SystemSpec& spec, const Grid1D& grid,
                         const SteadyStateOptions& options = {});

/// One undamped KKT sweep applied to `u`: returns T(u) and the multipliers.
DensityField kkt_sweep(const DensityField& u, const SystemSpec& spec,
                       const Grid1D& grid, std::vector<double>* lagrange_c = nullptr);

struct DissipationStep {
  double t = 0.0;
  double energy = 0.0;
  double delta_energy = 0.0;  // E(t_k) - E(t_{k-1})
  bool flagged = false;       // delta_energy > rel_tol * (1 + |E|)
};

std::vector<DissipationStep> dissipation_series(
    std::span<const DiagnosticsRecord> records, double rel_tol = 1e-10);

}  // namespace pmx
