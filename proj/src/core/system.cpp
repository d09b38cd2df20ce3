#include "pmx/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmx/errors.hpp"

namespace pmx {

std::vector<double> PotentialSpec::sample(const Grid1D& grid) const {
  switch (kind) {
    case Kind::zero:
      return std::vector<double>(grid.size(), 0.0);
    case Kind::quadratic: {
      std::vector<double> v(grid.size());
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = grid.center(j);
        v[j] = coefficient * x * x;
      }
      return v;
    }
    case Kind::tabulated:
      if (samples.size() != grid.size())
        throw ConfigError("tabulated potential has " + std::to_string(samples.size()) +
                          " samples, grid has " + std::to_string(grid.size()) + " cells");
      return samples;
  }
  return {};
}

double PotentialSpec::gradient(double x, const Grid1D& grid) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::quadratic:
      return 2.0 * coefficient * x;
    case Kind::tabulated: {
      if (samples.size() != grid.size())
        throw ConfigError("tabulated potential does not match grid");
      // slope of the piecewise-linear interpolant through the cell centers
      const double s = (x - grid.center(0)) / grid.dx();
      const auto last = static_cast<double>(grid.size() - 2);
      const auto seg = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, last));
      return (samples[seg + 1] - samples[seg]) / grid.dx();
    }
  }
  return 0.0;
}

KernelSpec KernelSpec::from_function(const Grid1D& grid,
                                     const std::function<double(double)>& w) {
  const auto cells = static_cast<long>(grid.size());
  std::vector<double> lattice(static_cast<std::size_t>(2 * cells - 1));
  for (long k = -(cells - 1); k <= cells - 1; ++k)
    lattice[static_cast<std::size_t>(k + cells - 1)] =
        w(static_cast<double>(k) * grid.dx());
  return tabulated(std::move(lattice));
}

double InitialCondition::profile(double x, const Grid1D& grid) const {
  switch (kind) {
    case Kind::uniform:
      return 1.0;
    case Kind::leftbump:
      return std::max((x + 0.5) * (-0.9 - x), 0.0);
    case Kind::rightbump:
      return std::max((x - 0.5) * (0.9 - x), 0.0);
    case Kind::tabulated:
      return samples.at(grid.cell_of(x));
  }
  return 0.0;
}

void SystemSpec::validate(const Grid1D& grid) const {
  if (species.empty()) throw ConfigError("system needs at least one species");
  if (!std::isfinite(delta)) throw ConfigError("delta must be finite");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ConfigError("epsilon must be a non-negative number");
  const std::size_t cells = grid.size();
  for (std::size_t i = 0; i < species.size(); ++i) {
    const auto& s = species[i];
    const std::string who = "species " + std::to_string(i + 1) + ": ";
    if (!(s.mass > 0.0) || !std::isfinite(s.mass))
      throw ConfigError(who + "mass must be positive");
    if (s.potential.kind == PotentialSpec::Kind::tabulated &&
        s.potential.samples.size() != cells)
      throw ConfigError(who + "tabulated potential length must equal J");
    if (s.kernel.kind == KernelSpec::Kind::tabulated) {
      const auto& w = s.kernel.samples;
      if (w.size() != 2 * cells - 1)
        throw ConfigError(who + "tabulated kernel needs 2J-1 lattice samples");
      double scale = 0.0;
      for (double v : w) scale = std::max(scale, std::abs(v));
      for (std::size_t k = 1; k < cells; ++k)
        if (std::abs(w[cells - 1 + k] - w[cells - 1 - k]) > 1e-12 * (1.0 + scale))
          throw ConfigError(who + "kernel must be even, W(-r) = W(r)");
    }
    if (s.ic.kind == InitialCondition::Kind::tabulated) {
      if (s.ic.samples.size() != cells)
        throw ConfigError(who + "tabulated initial condition length must equal J");
      for (double v : s.ic.samples)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw ConfigError(who + "tabulated initial condition must be non-negative");
    }
  }
}

std::string to_string(PotentialSpec::Kind kind) {
  switch (kind) {
    case PotentialSpec::Kind::zero: return "zero";
    case PotentialSpec::Kind::quadratic: return "quadratic";
    case PotentialSpec::Kind::tabulated: return "tabulated";
  }
  return "?";
}

std::string to_string(KernelSpec::Kind kind) {
  return kind == KernelSpec::Kind::none ? "none" : "tabulated";
}

std::string to_string(InitialCondition::Kind kind) {
  switch (kind) {
    case InitialCondition::Kind::uniform: return "uniform";
    case InitialCondition::Kind::leftbump: return "leftbump";
    case InitialCondition::Kind::rightbump: return "rightbump";
    case InitialCondition::Kind::tabulated: return "tabulated";
  }
  return "?";
}

}  // namespace pmx
