#include "pmx/energy.hpp"

#include <algorithm>
#include <cmath>

#include "pmx/errors.hpp"
#include "pmx/fv.hpp"

namespace pmx {

double energy(const DensityField& u, const SystemSpec& spec, const Grid1D& grid) {
  if (u.species() != spec.count() || u.cells() != grid.size())
    throw ConfigError("density field does not match the system or grid");
  const std::size_t cells = grid.size();
  double total = 0.0;
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const auto ui = u.row(i);
    const auto v = spec.species[i].potential.sample(grid);
    const bool interacting = spec.species[i].kernel.kind != KernelSpec::Kind::none;
    const auto wu = interacting ? convolve(spec.species[i].kernel, ui, grid)
                                : std::vector<double>(cells, 0.0);
    for (std::size_t j = 0; j < cells; ++j)
      total += 0.5 * ui[j] * ui[j] + v[j] * ui[j] + 0.5 * ui[j] * wu[j];
    for (std::size_t k = i + 1; k < spec.count(); ++k) {
      const auto uk = u.row(k);
      for (std::size_t j = 0; j < cells; ++j) total += spec.delta * ui[j] * uk[j];
    }
  }
  return grid.dx() * total;
}

namespace {

/// Finds c with dx * sum_j (c - g_j)_+ = mass.
double solve_multiplier(std::span<const double> g, double mass, double dx) {
  const auto mass_at = [&](double c) {
    double sum = 0.0;
    for (double gj : g) sum += std::max(c - gj, 0.0);
    return dx * sum;
  };
  const double lo0 = *std::min_element(g.begin(), g.end());
  double lo = lo0;
  double width = mass * static_cast<double>(g.size());
  double hi = lo0 + width;
  int widenings = 0;
  while (mass_at(hi) < mass) {
    if (++widenings > 200 || !std::isfinite(hi))
      throw SolverError("mass-constraint bracket exhausted while solving for c_i");
    lo = hi;
    width *= 2.0;
    hi = lo0 + width;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (mass_at(mid) < mass ? lo : hi) = mid;
  }
  return std::abs(mass_at(lo) - mass) <= std::abs(mass_at(hi) - mass) ? lo : hi;
}

/// g_i = V_i + W_i * u_i + delta sum_{k != i} u_k
std::vector<double> obstacle(const DensityField& u, const SystemSpec& spec,
                             const Grid1D& grid, const std::vector<double>& potential,
                             std::size_t i) {
  std::vector<double> g = potential;
  if (spec.species[i].kernel.kind != KernelSpec::Kind::none) {
    const auto wu = convolve(spec.species[i].kernel, u.row(i), grid);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += wu[j];
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    double cross = 0.0;
    for (std::size_t k = 0; k < spec.count(); ++k)
      if (k != i) cross += u(k, j);
    g[j] += spec.delta * cross;
  }
  return g;
}

DensityField sweep(const DensityField& u, const SystemSpec& spec, const Grid1D& grid,
                   const std::vector<std::vector<double>>& potentials,
                   std::vector<double>& c) {
  DensityField next(u.species(), u.cells());
  c.assign(spec.count(), 0.0);
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const auto g = obstacle(u, spec, grid, potentials[i], i);
    c[i] = solve_multiplier(g, spec.species[i].mass, grid.dx());
    auto row = next.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = std::max(c[i] - g[j], 0.0);
  }
  return next;
}

double max_abs_diff(const DensityField& a, const DensityField& b) {
  double d = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t n = 0; n < av.size(); ++n) d = std::max(d, std::abs(av[n] - bv[n]));
  return d;
}

/// KKT violation of u with multipliers c: |u + g - c| on the support,
/// (c - g)_+ off it.
double kkt_violation(const DensityField& u, const SystemSpec& spec, const Grid1D& grid,
                     const std::vector<std::vector<double>>& potentials,
                     const std::vector<double>& c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const auto g = obstacle(u, spec, grid, potentials[i], i);
    const auto row = u.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double r = row[j] > 0.0 ? std::abs(row[j] + g[j] - c[i])
                                     : std::max(c[i] - g[j], 0.0);
      worst = std::max(worst, r);
    }
  }
  return worst;
}

std::vector<std::vector<double>> sample_potentials(const SystemSpec& spec,
                                                   const Grid1D& grid) {
  std::vector<std::vector<double>> out;
  for (const auto& s : spec.species) out.push_back(s.potential.sample(grid));
  return out;
}

}  // namespace

DensityField kkt_sweep(const DensityField& u, const SystemSpec& spec, const Grid1D& grid,
                       std::vector<double>* lagrange_c) {
  spec.validate(grid);
  std::vector<double> c;
  auto next = sweep(u, spec, grid, sample_potentials(spec, grid), c);
  if (lagrange_c) *lagrange_c = std::move(c);
  return next;
}

SteadyState steady_state(const SystemSpec& spec, const Grid1D& grid,
                         const SteadyStateOptions& options) {
  spec.validate(grid);
  if (!(std::abs(spec.delta) < 1.0))
    throw ConfigError("steady state requires |delta| < 1 (strict convexity of the energy)");
  if (!(options.damping > 0.0 && options.damping <= 1.0))
    throw ConfigError("damping must lie in (0, 1]");
  const auto potentials = sample_potentials(spec, grid);

  DensityField u(spec.count(), grid.size());
  for (std::size_t i = 0; i < spec.count(); ++i)
    for (double& v : u.row(i)) v = spec.species[i].mass / grid.length();

  if (options.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  SteadyState result;
  std::vector<double> c;
  const double theta = options.damping;
  for (int it = 1;; ++it) {
    DensityField next = sweep(u, spec, grid, potentials, c);
    const bool last = it == options.max_iter;
    if (max_abs_diff(next, u) <= options.tol || last) {
      // candidate: the undamped image, which carries exact zeros and masses
      std::vector<double> c_next;
      const DensityField again = sweep(next, spec, grid, potentials, c_next);
      const double residual = std::max(max_abs_diff(again, next),
                                       kkt_violation(next, spec, grid, potentials, c));
      if (residual <= options.tol || last) {
        result.u_inf = std::move(next);
        result.lagrange_c = c;
        result.iterations = it;
        result.residual = residual;
        result.converged = residual <= options.tol;
        return result;
      }
    }
    for (std::size_t i = 0; i < u.species(); ++i) {
      auto row = u.row(i);
      const auto image = next.row(i);
      for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = (1.0 - theta) * row[j] + theta * image[j];
    }
  }
}

std::vector<DissipationStep> dissipation_series(std::span<const DiagnosticsRecord> records,
                                                double rel_tol) {
  std::vector<DissipationStep> out;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const double e = records[k].energy;
    const double de = e - records[k - 1].energy;
    out.push_back({records[k].t, e, de, de > rel_tol * (1.0 + std::abs(e))});
  }
  return out;
}

}  // namespace pmx
