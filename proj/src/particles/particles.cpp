#include "pmx/particles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <tuple>

#include "pmx/errors.hpp"

namespace pmx {

namespace {

double bump_shape(double r) noexcept {
  const double s = 1.0 - r * r;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

/// Composite Simpson rule for the bump on [-1, 1].
double bump_integral(int panels) {
  const double h = 2.0 / panels;
  double sum = bump_shape(-1.0) + bump_shape(1.0);
  for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * bump_shape(-1.0 + k * h);
  return sum * h / 3.0;
}

}  // namespace

InteractionProfile::InteractionProfile(Kind kind)
    : kind_(kind), scale_(kind == Kind::bump ? 1.0 / bump_integral(20000) : 1.0) {}

double InteractionProfile::value(double r) const noexcept {
  r = std::abs(r);
  if (kind_ == Kind::bump) return scale_ * bump_shape(r);
  const double t = 2.0 * r;
  if (t >= 2.0) return 0.0;
  if (t >= 1.0) {
    const double s = 2.0 - t;
    return 2.0 * s * s * s / 6.0;
  }
  return 2.0 * (2.0 / 3.0 - t * t + 0.5 * t * t * t);
}

double InteractionProfile::derivative(double r) const noexcept {
  if (r <= 0.0) return 0.0;
  if (kind_ == Kind::bump) {
    const double s = 1.0 - r * r;
    if (!(s > 0.0)) return 0.0;
    return scale_ * std::exp(-1.0 / s) * (-2.0 * r / (s * s));
  }
  const double t = 2.0 * r;
  if (t >= 2.0) return 0.0;
  if (t >= 1.0) {
    const double s = 2.0 - t;
    return -2.0 * s * s;  // 4 * d/dt[(2 - t)^3 / 6]
  }
  return 4.0 * (-2.0 * t + 1.5 * t * t);
}

double InteractionProfile::second_derivative(double r) const noexcept {
  r = std::abs(r);
  if (kind_ == Kind::bump) {
    const double s = 1.0 - r * r;
    if (!(s > 0.0)) return 0.0;
    const double f = scale_ * std::exp(-1.0 / s);
    return f * (4.0 * r * r / (s * s * s * s) - 2.0 / (s * s) - 8.0 * r * r / (s * s * s));
  }
  const double t = 2.0 * r;
  if (t >= 2.0) return 0.0;
  if (t >= 1.0) return 8.0 * (2.0 - t);
  return 8.0 * (-2.0 + 3.0 * t);
}

void ParticleSpec::validate() const {
  const std::size_t m = species();
  if (m == 0) throw ConfigError("particle system needs at least one species");
  if (ranges.size() != m || potentials.size() != m)
    throw ConfigError("particle spec: ranges and potentials need one entry per species");
  for (std::size_t i = 0; i < m; ++i) {
    if (counts[i] < 1)
      throw ConfigError("species " + std::to_string(i + 1) + " needs at least one particle");
    if (ranges[i].size() != m) throw ConfigError("interaction ranges must be an M x M table");
    for (double e : ranges[i])
      if (!(e > 0.0)) throw ConfigError("interaction ranges must be positive");
  }
  // independent check of the kernel normalization: trapezoid rule, which is
  // spectrally accurate for smooth compactly supported integrands
  const int n = 4096;
  double sum = 0.0;
  for (int k = 1; k < n; ++k) sum += kernel.value(-1.0 + 2.0 * k / n);
  const double l1 = sum * 2.0 / n;
  if (std::abs(l1 - 1.0) > 1e-6) throw ConfigError("interaction kernel must have unit L1 norm");
}

std::vector<std::vector<double>> chi_scaling(const ParticleSpec& spec, int dimension) {
  const std::size_t m = spec.species();
  std::vector<std::vector<double>> chi(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double range_d = std::pow(spec.ranges[i][j], dimension);
      if (i == j)
        chi[i][j] = spec.counts[i] > 1 ? 1.0 / ((spec.counts[i] - 1) * range_d) : 0.0;
      else
        chi[i][j] = spec.delta / (spec.counts[j] * range_d);
    }
  }
  return chi;
}

namespace {

/// -dK_ij/dx evaluated at the separation d = x_target - x_source.
double interaction(double d, double chi, double range, const InteractionProfile& k0) noexcept {
  const double r = std::abs(d) / range;
  if (r >= k0.support()) return 0.0;
  const double grad = chi * k0.derivative(r) / range;
  return d > 0.0 ? -grad : (d < 0.0 ? grad : 0.0);
}

std::vector<std::vector<double>> external_forces(const ParticleState& state,
                                                 const ParticleSpec& spec) {
  std::vector<std::vector<double>> force(spec.species());
  for (std::size_t i = 0; i < spec.species(); ++i) {
    force[i].resize(state.positions[i].size());
    for (std::size_t k = 0; k < force[i].size(); ++k)
      force[i][k] = -spec.potentials[i].gradient(state.positions[i][k], spec.domain);
  }
  return force;
}

/// Upper bound on |V''| over the domain.
double potential_curvature(const PotentialSpec& v, const Grid1D& grid) {
  switch (v.kind) {
    case PotentialSpec::Kind::zero:
      return 0.0;
    case PotentialSpec::Kind::quadratic:
      return 2.0 * std::abs(v.coefficient);
    case PotentialSpec::Kind::tabulated: {
      const auto& s = v.samples;
      const double dx = grid.dx();
      double worst = 0.0;
      for (std::size_t j = 1; j + 1 < s.size(); ++j)
        worst = std::max(worst, std::abs(s[j + 1] - 2.0 * s[j] + s[j - 1]) / (dx * dx));
      return worst;
    }
  }
  return 0.0;
}

void check_state(const ParticleState& state, const ParticleSpec& spec) {
  if (state.positions.size() != spec.species())
    throw ConfigError("particle state does not match the particle spec");
}

}  // namespace

std::vector<std::vector<double>> pairwise_force(const ParticleState& state,
                                                const ParticleSpec& spec) {
  check_state(state, spec);
  const auto chi = chi_scaling(spec);
  auto force = external_forces(state, spec);
  const std::size_t m = spec.species();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& xi = state.positions[i];
    for (std::size_t k = 0; k < xi.size(); ++k) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (chi[i][j] == 0.0) continue;
        const auto& xj = state.positions[j];
        for (std::size_t l = 0; l < xj.size(); ++l) {
          if (i == j && l == k) continue;
          sum += interaction(xi[k] - xj[l], chi[i][j], spec.ranges[i][j], spec.kernel);
        }
      }
      force[i][k] += sum;
    }
  }
  return force;
}

namespace {

struct SweepResult {
  std::vector<std::vector<double>> force;
  double stiffness = 0.0;  // max_k sum_l chi |K''| / eps^2
};

/// Cubic B-spline profile in truncated powers, t = 2|d| / eps >= 0:
///   B'(t)  = 2 (1 - t)_+^2 - (2 - t)_+^2 / 2,   B''(t) = (2 - t)_+ - 4 (1 - t)_+.
/// Branch-free so the window loops vectorize.
struct SplineWindow {
  static void accumulate(double x, const double* y, std::size_t count, double scale,
                         double& force, double& curvature, bool want_curvature) {
    double f = 0.0, c = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
      const double s = scale * (x - y[l]);  // 2 d / eps
      const double t = std::abs(s);
      const double a = std::max(1.0 - t, 0.0);
      const double b = std::max(2.0 - t, 0.0);
      f += (2.0 * a * a - 0.5 * b * b) * std::copysign(1.0, s);
      c += std::abs(b - 4.0 * a);
    }
    force += f;
    if (want_curvature) curvature += c;
  }
};

/// Force and curvature sums for the pair (i, j) over sorted positions: a
/// sliding window of the j-particles within `range` of each i-particle. The
/// self term contributes no force (dK_0/dr = 0 at r = 0) and its curvature is
/// removed afterwards.
void window_sums(const std::vector<double>& xs, const std::vector<double>& ys, double chi,
                 double range, const InteractionProfile& k0, bool want_curvature,
                 std::vector<double>& force, std::vector<double>& curvature) {
  const double reach = range * k0.support();
  const bool spline = k0.kind() == InteractionProfile::Kind::cubic_bspline;
  std::size_t lo = 0, hi = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    while (lo < ys.size() && ys[lo] <= x - reach) ++lo;
    if (hi < lo) hi = lo;
    while (hi < ys.size() && ys[hi] < x + reach) ++hi;
    double f = 0.0, c = 0.0;
    if (spline) {
      // -dK/dx = -chi * 4 B'(t) sign(d) / eps with K_0(r) = 2 B(2r)
      SplineWindow::accumulate(x, ys.data() + lo, hi - lo, 2.0 / range, f, c, want_curvature);
      force[k] += -4.0 * chi / range * f;
      if (want_curvature) curvature[k] += 8.0 * chi / (range * range) * c;
    } else {
      for (std::size_t l = lo; l < hi; ++l) {
        const double d = x - ys[l];
        f += interaction(d, chi, range, k0);
        if (want_curvature) c += std::abs(k0.second_derivative(d / range));
      }
      force[k] += f;
      if (want_curvature) curvature[k] += chi / (range * range) * c;
    }
  }
}

/// Pair sums over the sorted positions of each species, restricted to the kernel reach.
SweepResult sorted_sweep(const ParticleState& state, const ParticleSpec& spec,
                         bool want_stiffness) {
  check_state(state, spec);
  const auto chi = chi_scaling(spec);
  const std::size_t m = spec.species();

  std::vector<std::vector<std::size_t>> perm(m);
  std::vector<std::vector<double>> sorted(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& x = state.positions[i];
    perm[i].resize(x.size());
    std::iota(perm[i].begin(), perm[i].end(), std::size_t{0});
    std::sort(perm[i].begin(), perm[i].end(),
              [&](std::size_t a, std::size_t b) { return std::tie(x[a], a) < std::tie(x[b], b); });
    sorted[i].resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) sorted[i][k] = x[perm[i][k]];
  }

  SweepResult out{external_forces(state, spec), 0.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = sorted[i].size();
    std::vector<double> force(n, 0.0), curvature(want_stiffness ? n : 0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (chi[i][j] == 0.0) continue;
      window_sums(sorted[i], sorted[j], chi[i][j], spec.ranges[i][j], spec.kernel,
                  want_stiffness, force, curvature);
      if (want_stiffness && i == j) {
        const double self = chi[i][i] * std::abs(spec.kernel.second_derivative(0.0)) /
                            (spec.ranges[i][i] * spec.ranges[i][i]);
        for (double& c : curvature) c -= self;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      out.force[i][perm[i][k]] += force[k];
      if (want_stiffness) worst = std::max(worst, curvature[k]);
    }
  }
  if (want_stiffness) {
    double v2 = 0.0;
    for (const auto& v : spec.potentials) v2 = std::max(v2, potential_curvature(v, spec.domain));
    out.stiffness = worst + v2;
  }
  return out;
}

ParticleState advance(const ParticleState& state, const ParticleSpec& spec,
                      const std::vector<std::vector<double>>& force, double dt) {
  ParticleState next{state.t + dt, state.positions};
  const double lo = spec.domain.x_min();
  const double hi = spec.domain.x_max();
  for (std::size_t i = 0; i < next.positions.size(); ++i)
    for (std::size_t k = 0; k < next.positions[i].size(); ++k) {
      const double x = next.positions[i][k] + dt * force[i][k];
      if (!std::isfinite(x))
        throw NumericalBlowup(state.t, "non-finite particle position at t = " +
                                           std::to_string(state.t));
      next.positions[i][k] = reflect_into(x, lo, hi);
    }
  return next;
}

}  // namespace

std::vector<std::vector<double>> pairwise_force_sorted(const ParticleState& state,
                                                       const ParticleSpec& spec) {
  return sorted_sweep(state, spec, false).force;
}

double particle_stable_dt(const ParticleState& state, const ParticleSpec& spec) {
  const double s = sorted_sweep(state, spec, true).stiffness;
  return s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
}

double reflect_into(double x, double x_min, double x_max) noexcept {
  for (int guard = 0; guard < 64 && (x > x_max || x < x_min); ++guard)
    x = x > x_max ? 2.0 * x_max - x : 2.0 * x_min - x;
  return std::clamp(x, x_min, x_max);
}

ParticleState step_particles(const ParticleState& state, const ParticleSpec& spec, double dt) {
  if (!(dt > 0.0)) throw ConfigError("particle time step must be positive");
  return advance(state, spec, pairwise_force_sorted(state, spec), dt);
}

std::vector<double> empirical_density(const ParticleState& state, const Grid1D& grid,
                                      std::size_t species) {
  if (species >= state.positions.size() || state.positions[species].empty())
    throw ConfigError("empirical density of an empty species");
  const auto& x = state.positions[species];
  std::vector<double> density(grid.size(), 0.0);
  for (double p : x) density[grid.cell_of(p)] += 1.0;
  const double scale = 1.0 / (static_cast<double>(x.size()) * grid.dx());
  for (double& d : density) d *= scale;
  return density;
}

ParticleState sample_particles(const DensityField& initial, const ParticleSpec& spec,
                               Sampling sampling) {
  spec.validate();
  const Grid1D& grid = spec.domain;
  if (initial.species() != spec.species() || initial.cells() != grid.size())
    throw ConfigError("initial densities do not match the particle domain");
  ParticleState state;
  state.positions.resize(spec.species());
  for (std::size_t i = 0; i < spec.species(); ++i) {
    const auto row = initial.row(i);
    std::vector<double> cdf(row.size() + 1, 0.0);
    for (std::size_t j = 0; j < row.size(); ++j) cdf[j + 1] = cdf[j] + row[j];
    const double total = cdf.back();
    if (!(total > 0.0)) throw ConfigError("initial density vanishes; cannot sample particles");
    for (double& c : cdf) c /= total;

    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto n = static_cast<std::size_t>(spec.counts[i]);
    auto& x = state.positions[i];
    x.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double q = sampling == Sampling::stratified
                           ? (static_cast<double>(k) + unit(rng)) / static_cast<double>(n)
                           : unit(rng);
      // invert the piecewise-linear CDF
      auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), q);
      const auto cell = static_cast<std::size_t>(
          std::min<std::ptrdiff_t>(it - cdf.begin() - 1, static_cast<std::ptrdiff_t>(row.size() - 1)));
      const double width = cdf[cell + 1] - cdf[cell];
      const double frac = width > 0.0 ? (q - cdf[cell]) / width : 0.5;
      x[k] = grid.x_min() + (static_cast<double>(cell) + std::clamp(frac, 0.0, 1.0)) * grid.dx();
    }
  }
  return state;
}

ParticleState run_particles(ParticleState state, const ParticleSpec& spec, double t_end,
                            double dt, std::span<const double> record_times,
                            const ParticleSink& sink, bool cap_to_stability) {
  if (!(dt > 0.0)) throw ConfigError("particle time step must be positive");
  spec.validate();
  std::size_t next_record = 0;
  const auto offer = [&](double slack) {
    bool due = false;
    while (next_record < record_times.size() && record_times[next_record] <= state.t + slack) {
      ++next_record;
      due = true;
    }
    if (due && sink) sink(state);
  };
  offer(1e-12 * dt);
  while (state.t < t_end) {
    const auto sweep = sorted_sweep(state, spec, cap_to_stability);
    double h = std::min(dt, t_end - state.t);
    if (cap_to_stability && sweep.stiffness > 0.0) h = std::min(h, 1.0 / sweep.stiffness);
    double target = state.t + h;
    if (next_record < record_times.size() && record_times[next_record] > state.t &&
        record_times[next_record] < target)
      target = record_times[next_record];
    if (t_end - target <= 1e-12 * dt) target = t_end;
    state = advance(state, spec, sweep.force, target - state.t);
    state.t = target;
    offer(1e-12 * dt);
  }
  if (next_record < record_times.size() && sink) sink(state);
  return state;
}

ParticleSpec make_particle_spec(const SystemSpec& system, const Grid1D& grid,
                                const ParticleRunSettings& settings) {
  const std::size_t m = system.count();
  if (settings.counts.size() != m)
    throw ConfigError("particle counts need one entry per species");
  ParticleSpec spec;
  spec.domain = grid;
  spec.delta = system.delta;
  spec.counts = settings.counts;
  spec.ranges.assign(m, std::vector<double>(m, settings.range));
  for (const auto& s : system.species) spec.potentials.push_back(s.potential);
  spec.seed = settings.seed;
  spec.kernel = InteractionProfile(settings.kernel);
  spec.validate();
  return spec;
}

ParticleComparison compare_to_pde(const SystemSpec& system, const Grid1D& grid,
                                  const ParticleRunSettings& settings, double t_end,
                                  const TimeMode& pde_mode) {
  const ParticleSpec spec = make_particle_spec(system, grid, settings);
  const State initial = build_initial_state(system, grid);

  ParticleComparison out;
  out.particles = run_particles(sample_particles(initial.u, spec, settings.sampling), spec,
                                t_end, settings.dt, {}, {}, settings.stability_cap);
  out.pde = run_from(initial, system, grid, t_end, pde_mode, {}, {});
  for (std::size_t i = 0; i < system.count(); ++i) {
    const auto hist = empirical_density(out.particles, grid, i);
    const auto u = out.pde.u.row(i);
    // histogram densities are normalized to unit mass; compare against u / m_i
    const double mass = system.species[i].mass;
    double l1 = 0.0;
    for (std::size_t j = 0; j < hist.size(); ++j) l1 += std::abs(hist[j] - u[j] / mass);
    out.l1_distance.push_back(grid.dx() * l1);
  }
  return out;
}

}  // namespace pmx
