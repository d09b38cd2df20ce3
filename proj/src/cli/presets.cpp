#include "pmx/presets.hpp"

#include <string>

#include "pmx/errors.hpp"

namespace pmx {

namespace {

void check_example(int example) {
  if (example < 1 || example > 4)
    throw ConfigError("unknown example " + std::to_string(example) + "; expected 1, 2, 3 or 4");
}

bool strong_potentials(int example, bool strong) { return example == 3 || (example == 4 && strong); }

}  // namespace

std::vector<double> example_deltas(int example) {
  check_example(example);
  if (example == 4) return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  return {0.4, 0.6, 0.8, 0.99};
}

RunConfig example_config(int example, double delta, bool strong) {
  check_example(example);
  RunConfig cfg;
  cfg.delta = delta;
  cfg.time.t_end = example == 4 ? 5.0 : 3.0;
  const bool bumps = example == 1 || example == 3;

  SpeciesSection first;
  SpeciesSection second;
  first.ic = bumps ? InitialCondition::leftbump() : InitialCondition::uniform();
  second.ic = bumps ? InitialCondition::rightbump() : InitialCondition::uniform();
  if (strong_potentials(example, strong)) {
    first.potential = PotentialSpec::quadratic(0.5);
    second.potential = PotentialSpec::quadratic(50.0);
  } else {
    first.potential = PotentialSpec::zero();
    second.potential = PotentialSpec::quadratic(2.0);
  }
  cfg.species = {first, second};
  cfg.output.prefix = "ex" + std::to_string(example) + (example == 4 && strong ? "s" : "");
  return cfg;
}

double example_c_l(int example, bool strong) {
  check_example(example);
  return strong_potentials(example, strong) ? 100.0 : 6.0;
}

}  // namespace pmx
