#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#if defined(__SSE2__)
#include <immintrin.h>
#endif

#include "pmx/errors.hpp"
#include "pmx/fv.hpp"

namespace pmx {

namespace {

void convolve_into(const KernelSpec& kernel, std::span<const double> u,
                   const Grid1D& grid, std::span<double> out) {
  const std::size_t cells = grid.size();
  if (kernel.kind == KernelSpec::Kind::none) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const auto& w = kernel.samples;
  const double dx = grid.dx();
  for (std::size_t j = 0; j < cells; ++j) {
    // w[(j - k) + cells - 1]
    const double* wj = w.data() + j + cells - 1;
    double sum = 0.0;
    for (std::size_t k = 0; k < cells; ++k) sum += wj[-static_cast<std::ptrdiff_t>(k)] * u[k];
    out[j] = dx * sum;
  }
}

void check_kernel(const KernelSpec& kernel, std::span<const double> u, const Grid1D& grid) {
  if (u.size() != grid.size())
    throw ConfigError("density row length does not match the grid");
  if (kernel.kind == KernelSpec::Kind::tabulated &&
      kernel.samples.size() != 2 * grid.size() - 1)
    throw ConfigError("kernel lattice has " + std::to_string(kernel.samples.size()) +
                      " samples, grid needs " + std::to_string(2 * grid.size() - 1));
}

/// Flushes subnormal results to zero for the lifetime of the guard. Vacuum
/// regions decay geometrically into the subnormal range, where x86 arithmetic
/// is two orders of magnitude slower; values below 2.2e-308 carry no mass.
class SubnormalGuard {
 public:
#if defined(__SSE2__)
  SubnormalGuard() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~SubnormalGuard() { _mm_setcsr(saved_); }

 private:
  unsigned int saved_;
#endif
};

double max_abs_difference_quotient(std::span<const double> v, double dx) {
  double lip = 0.0;
  for (std::size_t j = 0; j + 1 < v.size(); ++j)
    lip = std::max(lip, std::abs(v[j + 1] - v[j]) / dx);
  return lip;
}

}  // namespace

std::vector<double> convolve(const KernelSpec& kernel, std::span<const double> u,
                             const Grid1D& grid) {
  check_kernel(kernel, u, grid);
  std::vector<double> out(grid.size());
  convolve_into(kernel, u, grid, out);
  return out;
}

std::vector<double> potential_xi(const State& state, const SystemSpec& spec,
                                 const Grid1D& grid, std::size_t species) {
  if (species >= spec.count() || state.u.species() != spec.count() ||
      state.u.cells() != grid.size())
    throw ConfigError("state does not match the system or grid");
  const auto u = state.u.row(species);
  const auto v = spec.species[species].potential.sample(grid);
  const auto wu = convolve(spec.species[species].kernel, u, grid);
  std::vector<double> xi(grid.size());
  for (std::size_t j = 0; j < xi.size(); ++j) {
    double cross = 0.0;
    for (std::size_t k = 0; k < spec.count(); ++k)
      if (k != species) cross += state.u(k, j);
    xi[j] = u[j] + v[j] + wu[j] + spec.delta * cross;
  }
  return xi;
}

FaceVelocities face_velocities(std::span<const double> xi, const Grid1D& grid) {
  FaceVelocities faces{std::vector<double>(xi.size() + 1, 0.0)};
  const double inv_dx = 1.0 / grid.dx();
  for (std::size_t j = 0; j + 1 < xi.size(); ++j)
    faces.v[j + 1] = -(xi[j + 1] - xi[j]) * inv_dx;
  return faces;
}

Stepper::Stepper(const SystemSpec& spec, const Grid1D& grid)
    : spec_(spec), grid_(grid) {
  spec_.validate(grid_);
  for (const auto& s : spec_.species) {
    potential_.push_back(s.potential.sample(grid_));
    lip_v_ = std::max(lip_v_, max_abs_difference_quotient(potential_.back(), grid_.dx()));
  }
  xi_ = DensityField(spec_.count(), grid_.size());
  next_ = DensityField(spec_.count(), grid_.size());
  flux_.assign(grid_.size() + 1, 0.0);
}

void Stepper::compute_xi(const DensityField& u) {
  const std::size_t species = spec_.count();
  const std::size_t cells = grid_.size();
  for (std::size_t i = 0; i < species; ++i) {
    auto xi = xi_.row(i);
    const auto ui = u.row(i);
    const auto& v = potential_[i];
    if (spec_.species[i].kernel.kind == KernelSpec::Kind::none) {
      for (std::size_t j = 0; j < cells; ++j) xi[j] = ui[j] + v[j];
    } else {
      convolve_into(spec_.species[i].kernel, ui, grid_, xi);
      for (std::size_t j = 0; j < cells; ++j) xi[j] = (ui[j] + v[j]) + xi[j];
    }
    if (species > 1) {
      for (std::size_t j = 0; j < cells; ++j) {
        double cross = 0.0;
        for (std::size_t k = 0; k < species; ++k)
          if (k != i) cross += u(k, j);
        xi[j] += spec_.delta * cross;
      }
    }
  }
}

double Stepper::stable_dt(const State& state, double safety, double dt_cap) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw ConfigError("CFL safety factor must lie in (0, 1]");
  compute_xi(state.u);
  const double dx = grid_.dx();
  double v_max = 0.0;
  for (std::size_t i = 0; i < spec_.count(); ++i)
    v_max = std::max(v_max, max_abs_difference_quotient(xi_.row(i), dx));
  double u_max = 0.0;
  for (double v : state.u.values()) u_max = std::max(u_max, v);

  const double eps = spec_.epsilon;
  const double inf = std::numeric_limits<double>::infinity();
  const double adv_rate = 2.0 * v_max + 2.0 * eps / dx;
  const double dt_adv = adv_rate > 0.0 ? dx / adv_rate : inf;
  const double coupling = 1.0 + std::abs(spec_.delta) * static_cast<double>(spec_.count() - 1);
  const double diff_rate = 2.0 * (eps + u_max * coupling + lip_v_ * dx);
  const double dt_diff = diff_rate > 0.0 ? dx * dx / diff_rate : inf;
  const double dt = safety * std::min(dt_adv, dt_diff);
  return std::isfinite(dt) ? std::min(dt, dt_cap) : dt_cap;
}

StepReport Stepper::advance(State& state, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  if (state.u.species() != spec_.count() || state.u.cells() != grid_.size())
    throw ConfigError("state does not match the system or grid");
  const std::size_t species = spec_.count();
  const std::size_t cells = grid_.size();
  const double dx = grid_.dx();
  const double inv_dx = 1.0 / dx;
  const double lambda = dt / dx;
  const double mu = dt * spec_.epsilon / (dx * dx);

  const SubnormalGuard guard;
  compute_xi(state.u);

  StepReport report{dt, 0.0, std::numeric_limits<double>::infinity()};
  bool finite = true;
  for (std::size_t i = 0; i < species; ++i) {
    const auto u = state.u.row(i);
    const auto xi = xi_.row(i);
    auto out = next_.row(i);
    // flux_[0] and flux_[cells] stay zero: no-flux boundary
    for (std::size_t j = 0; j + 1 < cells; ++j) {
      const double v = -(xi[j + 1] - xi[j]) * inv_dx;
      report.max_velocity = std::max(report.max_velocity, std::abs(v));
      flux_[j + 1] = upwind_flux(v, u[j], u[j + 1]);
    }
    for (std::size_t j = 0; j < cells; ++j)
      out[j] = u[j] - lambda * (flux_[j + 1] - flux_[j]);
    if (mu > 0.0) {
      for (std::size_t j = 0; j < cells; ++j) {
        const double left = j == 0 ? u[j] : u[j - 1];
        const double right = j + 1 == cells ? u[j] : u[j + 1];
        out[j] += mu * ((right + left) - 2.0 * u[j]);
      }
    }
    for (double value : out) {
      finite = finite && std::isfinite(value);
      report.min_density_after = std::min(report.min_density_after, value);
    }
  }
  if (!finite) {
    std::ostringstream msg;
    msg << "non-finite density in step starting at t = " << state.t;
    throw NumericalBlowup(state.t, msg.str());
  }
  std::swap(state.u, next_);
  state.t += dt;
  return report;
}

double cfl_dt(const State& state, const SystemSpec& spec, const Grid1D& grid,
              double safety, double dt_cap) {
  Stepper stepper(spec, grid);
  return stepper.stable_dt(state, safety, dt_cap);
}

std::pair<State, StepReport> step(const State& state, const SystemSpec& spec,
                                  const Grid1D& grid, double dt) {
  Stepper stepper(spec, grid);
  State next = state;
  const StepReport report = stepper.advance(next, dt);
  return {std::move(next), report};
}

}  // namespace pmx
