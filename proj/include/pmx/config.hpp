#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmx/energy.hpp"
#include "pmx/fv.hpp"
#include "pmx/grid.hpp"
#include "pmx/particles.hpp"
#include "pmx/system.hpp"

namespace pmx {

struct GridSection {
  double x_min = -1.0;
  double x_max = 1.0;
  int cells = 64;

  bool operator==(const GridSection&) const = default;
};

struct TimeSection {
  enum class Mode { fixed, adaptive };

  Mode mode = Mode::fixed;
  double dt = 1e-6;
  double safety = 0.9;
  double dt_cap = kDefaultDtCap;
  double t_end = 3.0;
  int record_count = 10;

  TimeMode time_mode() const;
  bool operator==(const TimeSection&) const = default;
};

/// Config-level kernel description, tabulated onto the grid lattice on use.
struct KernelConfig {
  enum class Kind { none, constant, gaussian, tabulated };

  Kind kind = Kind::none;
  double amplitude = 0.0;       // constant, gaussian
  double width = 0.0;           // gaussian: amplitude * exp(-r^2 / width^2)
  std::vector<double> samples;  // tabulated: 2J-1 lattice values

  KernelSpec build(const Grid1D& grid) const;
  bool operator==(const KernelConfig&) const = default;
};

struct SpeciesSection {
  PotentialSpec potential;
  KernelConfig kernel;
  double mass = 1.0;
  InitialCondition ic;

  bool operator==(const SpeciesSection&) const = default;
};

struct SteadySection {
  double tol = 1e-10;
  int max_iter = 200000;
  double damping = 0.5;

  SteadyStateOptions options() const { return {tol, max_iter, damping}; }
  bool operator==(const SteadySection&) const = default;
};

struct ParticleSection {
  std::vector<int> counts;
  double range = 0.05;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  Sampling sampling = Sampling::stratified;
  InteractionProfile::Kind kernel = InteractionProfile::Kind::cubic_bspline;
  bool stability_cap = true;  // shrink dt to the forward-Euler stability limit

  bool operator==(const ParticleSection&) const = default;
};

struct OutputSection {
  std::string directory = ".";
  std::string prefix = "run";

  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  GridSection grid;
  TimeSection time;
  double delta = 0.0;
  double epsilon = 0.0;
  std::vector<SpeciesSection> species;
  SteadySection steady;
  std::optional<ParticleSection> particles;
  OutputSection output;

  Grid1D make_grid() const;
  SystemSpec system(const Grid1D& grid) const;
  std::vector<double> record_times() const;

  bool operator==(const RunConfig&) const = default;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

/// Parses the sectioned key = value format. Throws ConfigError naming the
/// offending line and key on unknown keys, malformed values, or a missing
/// [system] section.
ParsedConfig parse_config(std::string_view text);

/// Reads and parses a file; I/O failures throw IoError.
ParsedConfig load_config(const std::string& path);

/// Renders every field so that parse_config(render_config(c)).config == c.
std::string render_config(const RunConfig& config);

}  // namespace pmx
