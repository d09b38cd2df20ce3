#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "pmx/grid.hpp"
#include "pmx/state.hpp"
#include "pmx/system.hpp"

namespace pmx::test {

inline SpeciesSpec species(PotentialSpec v = PotentialSpec::zero(),
                           InitialCondition ic = InitialCondition::uniform(), double mass = 1.0) {
  return {std::move(v), KernelSpec::none(), mass, std::move(ic)};
}

/// Two species with the reference potentials V_1 = 0, V_2 = 2x^2.
inline SystemSpec pair(double delta, InitialCondition ic1 = InitialCondition::leftbump(),
                       InitialCondition ic2 = InitialCondition::rightbump()) {
  SystemSpec s;
  s.delta = delta;
  s.species = {species(PotentialSpec::zero(), ic1), species(PotentialSpec::quadratic(2.0), ic2)};
  return s;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

inline double min_value(std::span<const double> a) { return *std::min_element(a.begin(), a.end()); }

}  // namespace pmx::test
