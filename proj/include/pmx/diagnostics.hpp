#pragma once

#include <span>
#include <vector>

#include "pmx/grid.hpp"
#include "pmx/state.hpp"
#include "pmx/system.hpp"

namespace pmx {

/// sqrt(dx * sum u_j^2)
double l2_norm(std::span<const double> u, const Grid1D& grid);

/// L2 norm of the forward differences (u_{j+1} - u_j) / dx over the J-1 interior pairs.
double h1_seminorm(std::span<const double> u, const Grid1D& grid);

/// sum_j |u_{j+1} - u_j| over the grid partition.
double tv_norm(std::span<const double> u);

/// dx * sum u_j max(log u_j, 0); zero cells contribute 0.
double entropy_pos(std::span<const double> u, const Grid1D& grid);

struct SpeciesNorms {
  double mass = 0.0;
  double min_density = 0.0;
  double l2 = 0.0;
  double h1semi = 0.0;
  double tv = 0.0;
  double entropy_pos = 0.0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  std::vector<SpeciesNorms> species;
  double energy = 0.0;
};

DiagnosticsRecord make_record(const State& state, const SystemSpec& spec,
                              const Grid1D& grid);

/// Integrated-in-time norms over the recorded times:
///   u_2T      = sqrt(sum_k sum_i ||u_i(t_k)||_L2^2)
///   grad_u_2T = sqrt(sum_k sum_i ||d_x u_i(t_k)||_L2^2)
///   tv_T      = sqrt(sum_k sum_i ||u_i(t_k)||_TV)     (TV terms are not squared)
struct SweepRecord {
  double delta = 0.0;
  double u_2T = 0.0;
  double grad_u_2T = 0.0;
  double tv_T = 0.0;
};

SweepRecord integrated_norms(std::span<const DiagnosticsRecord> records,
                             double delta = 0.0);

struct SpeciesEstimate {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct EnergyEstimate {
  std::vector<SpeciesEstimate> species;
  bool holds = false;
};

/// Discrete entropy/H1 estimate along a recorded trajectory, per species:
///
///   lhs = int u(T)(log u(T))_+ + 1/2 int_0^T ||d_x u||^2 + eps int_0^T int |d_x u|^2 / u
///   rhs = e^-1 |O| + 2|O| T C_L^2 + int u_0 log u_0 + 2|O| T C_L^2 m^2
///         + delta^2 int_0^T ||F||^2,     F = sum_{j != i} d_x u_j
///
/// Time integrals use the trapezoidal rule over the snapshots. `holds` means
/// lhs <= rhs + rel_tol * |rhs|.
EnergyEstimate energy_estimate_check(std::span<const State> snapshots,
                                     const SystemSpec& spec, const Grid1D& grid,
                                     double c_l, double rel_tol = 0.05);

}  // namespace pmx
