#include <algorithm>
#include <cmath>

#include "pmx/diagnostics.hpp"
#include "pmx/energy.hpp"
#include "pmx/errors.hpp"

namespace pmx {

double l2_norm(std::span<const double> u, const Grid1D& grid) {
  double sum = 0.0;
  for (double v : u) sum += v * v;
  return std::sqrt(grid.dx() * sum);
}

double h1_seminorm(std::span<const double> u, const Grid1D& grid) {
  const double dx = grid.dx();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    const double slope = (u[j + 1] - u[j]) / dx;
    sum += slope * slope;
  }
  return std::sqrt(dx * sum);
}

double tv_norm(std::span<const double> u) {
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) sum += std::abs(u[j + 1] - u[j]);
  return sum;
}

double entropy_pos(std::span<const double> u, const Grid1D& grid) {
  double sum = 0.0;
  for (double v : u)
    if (v > 1.0) sum += v * std::log(v);
  return grid.dx() * sum;
}

DiagnosticsRecord make_record(const State& state, const SystemSpec& spec,
                              const Grid1D& grid) {
  DiagnosticsRecord record;
  record.t = state.t;
  for (std::size_t i = 0; i < state.u.species(); ++i) {
    const auto row = state.u.row(i);
    SpeciesNorms n;
    n.mass = discrete_mass(row, grid);
    n.min_density = *std::min_element(row.begin(), row.end());
    n.l2 = l2_norm(row, grid);
    n.h1semi = h1_seminorm(row, grid);
    n.tv = tv_norm(row);
    n.entropy_pos = entropy_pos(row, grid);
    record.species.push_back(n);
  }
  record.energy = energy(state.u, spec, grid);
  return record;
}

SweepRecord integrated_norms(std::span<const DiagnosticsRecord> records, double delta) {
  double l2 = 0.0;
  double h1 = 0.0;
  double tv = 0.0;
  for (const auto& r : records) {
    for (const auto& s : r.species) {
      l2 += s.l2 * s.l2;
      h1 += s.h1semi * s.h1semi;
      tv += s.tv;
    }
  }
  return {delta, std::sqrt(l2), std::sqrt(h1), std::sqrt(tv)};
}

namespace {

double signed_entropy(std::span<const double> u, const Grid1D& grid) {
  double sum = 0.0;
  for (double v : u)
    if (v > 0.0) sum += v * std::log(v);
  return grid.dx() * sum;
}

/// Discrete Fisher information dx * sum (du/dx)^2 / u_face, u_face the mean of
/// the two neighbors; faces with u_face = 0 carry no gradient and are skipped.
double fisher_information(std::span<const double> u, const Grid1D& grid) {
  const double dx = grid.dx();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    const double face = 0.5 * (u[j] + u[j + 1]);
    if (face > 0.0) {
      const double slope = (u[j + 1] - u[j]) / dx;
      sum += slope * slope / face;
    }
  }
  return dx * sum;
}

double trapezoid(std::span<const double> t, std::span<const double> f) {
  double sum = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) sum += 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
  return sum;
}

}  // namespace

EnergyEstimate energy_estimate_check(std::span<const State> snapshots,
                                     const SystemSpec& spec, const Grid1D& grid,
                                     double c_l, double rel_tol) {
  if (snapshots.empty()) throw ConfigError("energy estimate needs at least one snapshot");
  const std::size_t species = spec.count();
  const double omega = grid.length();
  const double horizon = snapshots.back().t - snapshots.front().t;
  const double drift = 2.0 * omega * horizon * c_l * c_l;

  std::vector<double> times;
  for (const auto& s : snapshots) times.push_back(s.t);

  EnergyEstimate result;
  result.holds = true;
  std::vector<double> grad_sq(snapshots.size());
  std::vector<double> cross_sq(snapshots.size());
  std::vector<double> fisher(snapshots.size());
  std::vector<double> cross(grid.size());
  for (std::size_t i = 0; i < species; ++i) {
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
      const auto& u = snapshots[k].u;
      const double g = h1_seminorm(u.row(i), grid);
      grad_sq[k] = g * g;
      fisher[k] = fisher_information(u.row(i), grid);
      std::fill(cross.begin(), cross.end(), 0.0);
      for (std::size_t other = 0; other < species; ++other)
        if (other != i)
          for (std::size_t j = 0; j < cross.size(); ++j) cross[j] += u(other, j);
      const double f = h1_seminorm(cross, grid);
      cross_sq[k] = f * f;
    }
    const auto first = snapshots.front().u.row(i);
    const auto last = snapshots.back().u.row(i);
    const double mass0 = discrete_mass(first, grid);

    SpeciesEstimate est;
    est.lhs = entropy_pos(last, grid) + 0.5 * trapezoid(times, grad_sq) +
              spec.epsilon * trapezoid(times, fisher);
    est.rhs = (std::exp(-1.0) * omega + drift) + signed_entropy(first, grid) +
              drift * mass0 * mass0 + spec.delta * spec.delta * trapezoid(times, cross_sq);
    est.holds = est.lhs <= est.rhs + rel_tol * std::abs(est.rhs);
    result.holds = result.holds && est.holds;
    result.species.push_back(est);
  }
  return result;
}

}  // namespace pmx
