#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "pmx/diagnostics.hpp"
#include "pmx/grid.hpp"
#include "pmx/state.hpp"
#include "pmx/system.hpp"

namespace pmx {

/// Midpoint quadrature of (W * u)(x_j) = dx sum_k W((j-k) dx) u_k.
/// Returns zeros for KernelSpec::Kind::none.
std::vector<double> convolve(const KernelSpec& kernel, std::span<const double> u,
                             const Grid1D& grid);

/// xi_i = u_i + V_i + W_i * u_i + delta sum_{k != i} u_k at cell centers.
/// The drift of species i is -d_x xi_i.
std::vector<double> potential_xi(const State& state, const SystemSpec& spec,
                                 const Grid1D& grid, std::size_t species);

/// Velocities at the J+1 faces; v[0] = v[J] = 0 (no flux).
struct FaceVelocities {
  std::vector<double> v;
};

/// v_{j+1/2} = -(xi_{j+1} - xi_j) / dx on interior faces.
FaceVelocities face_velocities(std::span<const double> xi, const Grid1D& grid);

/// Donor-cell flux: u_left max(v, 0) + u_right min(v, 0).
constexpr double upwind_flux(double v, double u_left, double u_right) noexcept {
  return u_left * (v > 0.0 ? v : 0.0) + u_right * (v < 0.0 ? v : 0.0);
}

inline constexpr double kDefaultDtCap = 1e-2;

/// Largest explicit step that keeps the update a convex combination:
///   safety * min( dx / (2 v_max + 2 eps / dx),
///                 dx^2 / (2 (eps + u_max (1 + |delta|(M-1)) + lip_V dx)) ),
/// clipped to dt_cap (which is also returned when both limits are infinite).
double cfl_dt(const State& state, const SystemSpec& spec, const Grid1D& grid,
              double safety, double dt_cap = kDefaultDtCap);

struct StepReport {
  double dt_used = 0.0;
  double max_velocity = 0.0;
  double min_density_after = 0.0;
};

/// Reusable forward-Euler upwind stepper. Holds sampled potentials and scratch
/// buffers so repeated steps do not allocate.
class Stepper {
 public:
  Stepper(const SystemSpec& spec, const Grid1D& grid);

  /// Advances `state` in place by dt. Throws NumericalBlowup on non-finite output.
  StepReport advance(State& state, double dt);

  /// cfl_dt for the current state.
  double stable_dt(const State& state, double safety, double dt_cap = kDefaultDtCap);

  const SystemSpec& spec() const noexcept { return spec_; }
  const Grid1D& grid() const noexcept { return grid_; }

 private:
  void compute_xi(const DensityField& u);

  SystemSpec spec_;
  Grid1D grid_;
  std::vector<std::vector<double>> potential_;
  double lip_v_ = 0.0;
  DensityField xi_;
  DensityField next_;
  std::vector<double> flux_;
};

/// One forward-Euler step; see Stepper::advance.
std::pair<State, StepReport> step(const State& state, const SystemSpec& spec,
                                  const Grid1D& grid, double dt);

struct FixedStep {
  double dt = 1e-6;
};

struct AdaptiveStep {
  double safety = 0.9;
  double dt_cap = kDefaultDtCap;
};

using TimeMode = std::variant<FixedStep, AdaptiveStep>;

/// Receives a diagnostics record together with the density snapshot it was
/// computed from.
using DiagnosticsSink = std::function<void(const DiagnosticsRecord&, const State&)>;

/// {0, T/n, 2T/n, ..., T}
std::vector<double> equally_spaced_times(double t_end, int intervals);

/// Integrates from the initial state to t_end. Each record time is emitted at
/// the first step reaching it (fixed mode) or hit exactly (adaptive mode).
State run(const SystemSpec& spec, const Grid1D& grid, double t_end,
          const TimeMode& mode, std::span<const double> record_times,
          const DiagnosticsSink& sink);

/// Same as above, starting from a given state.
State run_from(State initial, const SystemSpec& spec, const Grid1D& grid,
               double t_end, const TimeMode& mode,
               std::span<const double> record_times, const DiagnosticsSink& sink);

}  // namespace pmx
