#include "pmx/state.hpp"

#include <string>

#include "pmx/errors.hpp"

namespace pmx {

double discrete_mass(std::span<const double> row, const Grid1D& grid) {
  double sum = 0.0;
  for (double v : row) sum += v;
  return grid.dx() * sum;
}

State build_initial_state(const SystemSpec& spec, const Grid1D& grid) {
  spec.validate(grid);
  State state{0.0, DensityField(spec.count(), grid.size())};
  for (std::size_t i = 0; i < spec.count(); ++i) {
    const auto& species = spec.species[i];
    auto row = state.u.row(i);
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] = species.ic.kind == InitialCondition::Kind::tabulated
                   ? species.ic.samples[j]
                   : species.ic.profile(grid.center(j), grid);
    const double raw = discrete_mass(row, grid);
    if (!(raw > 0.0))
      throw ConfigError("species " + std::to_string(i + 1) +
                        ": initial condition vanishes on the grid");
    const double scale = species.mass / raw;
    for (double& v : row) v *= scale;
  }
  return state;
}

}  // namespace pmx
