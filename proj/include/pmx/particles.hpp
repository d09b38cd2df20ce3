#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pmx/fv.hpp"
#include "pmx/grid.hpp"
#include "pmx/state.hpp"
#include "pmx/system.hpp"

namespace pmx {

/// Scale-free radial interaction profile K_0 with unit integral over the real
/// line and support r < 1.
///
///   cubic_bspline  K_0(r) = 2 B_3(2r), B_3 the centered cubic B-spline. Its
///                  Fourier transform is sinc^4 >= 0, so the deterministic
///                  particle dynamics has no short-wave instability.
///   bump           c exp(-1 / (1 - r^2)). Its Fourier transform changes sign;
///                  without noise the particles condense into clusters of
///                  spacing ~eps.
class InteractionProfile {
 public:
  enum class Kind { cubic_bspline, bump };

  explicit InteractionProfile(Kind kind = Kind::cubic_bspline);

  Kind kind() const noexcept { return kind_; }
  double value(double r) const noexcept;
  /// dK_0/dr; zero at r = 0 and outside the support.
  double derivative(double r) const noexcept;
  double second_derivative(double r) const noexcept;
  double support() const noexcept { return 1.0; }

  bool operator==(const InteractionProfile&) const = default;

 private:
  Kind kind_;
  double scale_;  // bump normalization
};

/// Interacting particle system: M species, N_i particles each, pair potentials
/// K_ij(x) = chi_ij K_0(|x| / eps_ij), external potentials V_i and reflecting walls.
struct ParticleSpec {
  Grid1D domain{-1.0, 1.0, 64};
  double delta = 0.0;
  std::vector<int> counts;
  std::vector<std::vector<double>> ranges;  // eps_ij
  std::vector<PotentialSpec> potentials;
  std::uint64_t seed = 0;
  InteractionProfile kernel;

  std::size_t species() const noexcept { return counts.size(); }
  /// Throws ConfigError on inconsistent sizes, N_i < 1, eps_ij <= 0, or a
  /// kernel whose L1 norm is not 1 within 1e-6.
  void validate() const;
};

struct ParticleState {
  double t = 0.0;
  std::vector<std::vector<double>> positions;  // per species
};

/// chi_ii = 1 / ((N_i - 1) eps_ii^d), chi_ij = delta / (N_j eps_ij^d).
/// A single-particle species has no self-interaction (chi_ii = 0).
std::vector<std::vector<double>> chi_scaling(const ParticleSpec& spec, int dimension = 1);

/// Total force on every particle, by the direct double sum over all ordered pairs.
std::vector<std::vector<double>> pairwise_force(const ParticleState& state,
                                                const ParticleSpec& spec);

/// Same forces, summing only pairs within the kernel support found by a sweep
/// over the sorted positions.
std::vector<std::vector<double>> pairwise_force_sorted(const ParticleState& state,
                                                       const ParticleSpec& spec);

/// Folds x back into [x_min, x_max] by repeated reflection at the walls.
double reflect_into(double x, double x_min, double x_max) noexcept;

/// Largest step for which forward Euler is linearly stable at `state`:
/// 1 / (max_k sum_l chi |K_ij''| / eps^2 + max |V_i''|), the Gershgorin bound on
/// the force Jacobian. Returns +inf when nothing interacts.
double particle_stable_dt(const ParticleState& state, const ParticleSpec& spec);

/// Forward Euler X <- X + dt F(X) followed by reflection at the walls.
ParticleState step_particles(const ParticleState& state, const ParticleSpec& spec, double dt);

/// Histogram count / (N_i dx). Throws ConfigError for an empty species.
std::vector<double> empirical_density(const ParticleState& state, const Grid1D& grid,
                                      std::size_t species);

enum class Sampling { iid, stratified };

/// Draws N_i positions per species from the piecewise-constant densities in
/// `initial` (one row per species, on spec.domain) by inverse CDF. Stratified
/// sampling uses one uniform draw per quantile bin (k + U_k) / N_i. Each species
/// has its own generator seeded from (seed, species index).
ParticleState sample_particles(const DensityField& initial, const ParticleSpec& spec,
                               Sampling sampling = Sampling::stratified);

/// Receives particle snapshots at record times.
using ParticleSink = std::function<void(const ParticleState&)>;

/// Steps from `state` to t_end, clipping steps to land exactly on record times
/// and on t_end. With `cap_to_stability` each step is min(dt, particle_stable_dt);
/// the cap is global, so it couples the step sequence of otherwise independent
/// species. Without it every step is dt.
ParticleState run_particles(ParticleState state, const ParticleSpec& spec, double t_end,
                            double dt, std::span<const double> record_times = {},
                            const ParticleSink& sink = {}, bool cap_to_stability = true);

struct ParticleRunSettings {
  std::vector<int> counts;
  double range = 0.05;  // eps_ij for every pair
  double dt = 1e-3;  // upper bound; the stability limit may force smaller steps
  std::uint64_t seed = 0;
  Sampling sampling = Sampling::stratified;
  bool stability_cap = true;
  InteractionProfile::Kind kernel = InteractionProfile::Kind::cubic_bspline;
};

/// Particle system matched to a PDE system (same domain, delta, potentials).
ParticleSpec make_particle_spec(const SystemSpec& system, const Grid1D& grid,
                                const ParticleRunSettings& settings);

struct ParticleComparison {
  std::vector<double> l1_distance;  // per species
  ParticleState particles;
  State pde;
};

/// Runs both models from matched initial data to t_end and measures
/// ||histogram - u_PDE(T)||_L1 per species.
ParticleComparison compare_to_pde(const SystemSpec& system, const Grid1D& grid,
                                  const ParticleRunSettings& settings, double t_end,
                                  const TimeMode& pde_mode = AdaptiveStep{});

}  // namespace pmx
