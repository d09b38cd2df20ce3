#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pmx/grid.hpp"

namespace pmx {

/// External potential V_i. Tabulated potentials are sampled at cell centers.
struct PotentialSpec {
  enum class Kind { zero, quadratic, tabulated };

  Kind kind = Kind::zero;
  double coefficient = 0.0;     // quadratic: V(x) = coefficient * x^2
  std::vector<double> samples;  // tabulated: one value per cell

  static PotentialSpec zero() { return {}; }
  static PotentialSpec quadratic(double a) { return {Kind::quadratic, a, {}}; }
  static PotentialSpec tabulated(std::vector<double> values) {
    return {Kind::tabulated, 0.0, std::move(values)};
  }

  /// Values at the cell centers of `grid`.
  std::vector<double> sample(const Grid1D& grid) const;

  /// dV/dx at an arbitrary point of the domain. Tabulated potentials use
  /// linear interpolation of centered differences.
  double gradient(double x, const Grid1D& grid) const;

  bool operator==(const PotentialSpec&) const = default;
};

/// Self-interaction kernel W_i, stored on the difference lattice
/// {k dx : -(J-1) <= k <= J-1}; samples[k + J - 1] = W(k dx).
struct KernelSpec {
  enum class Kind { none, tabulated };

  Kind kind = Kind::none;
  std::vector<double> samples;

  static KernelSpec none() { return {}; }
  static KernelSpec tabulated(std::vector<double> lattice_values) {
    return {Kind::tabulated, std::move(lattice_values)};
  }
  /// Tabulates an even function W(r) on the difference lattice of `grid`.
  static KernelSpec from_function(const Grid1D& grid,
                                  const std::function<double(double)>& w);

  bool operator==(const KernelSpec&) const = default;
};

/// Initial profile; every profile is rescaled to the species mass.
struct InitialCondition {
  enum class Kind { uniform, leftbump, rightbump, tabulated };

  Kind kind = Kind::uniform;
  std::vector<double> samples;  // tabulated: one value per cell, >= 0

  static InitialCondition uniform() { return {}; }
  static InitialCondition leftbump() { return {Kind::leftbump, {}}; }
  static InitialCondition rightbump() { return {Kind::rightbump, {}}; }
  static InitialCondition tabulated(std::vector<double> values) {
    return {Kind::tabulated, std::move(values)};
  }

  /// Unnormalized profile value at x (tabulated: value of the containing cell).
  double profile(double x, const Grid1D& grid) const;

  bool operator==(const InitialCondition&) const = default;
};

struct SpeciesSpec {
  PotentialSpec potential;
  KernelSpec kernel;
  double mass = 1.0;
  InitialCondition ic;

  bool operator==(const SpeciesSpec&) const = default;
};

/// M interacting species with cross-diffusion coupling delta and
/// regularizing diffusivity epsilon.
struct SystemSpec {
  double delta = 0.0;
  double epsilon = 0.0;
  std::vector<SpeciesSpec> species;

  std::size_t count() const noexcept { return species.size(); }

  /// Throws ConfigError when the spec is inconsistent with `grid`.
  void validate(const Grid1D& grid) const;

  bool operator==(const SystemSpec&) const = default;
};

std::string to_string(PotentialSpec::Kind kind);
std::string to_string(KernelSpec::Kind kind);
std::string to_string(InitialCondition::Kind kind);

}  // namespace pmx
