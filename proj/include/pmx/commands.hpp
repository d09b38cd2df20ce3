#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pmx/bounds.hpp"
#include "pmx/config.hpp"
#include "pmx/diagnostics.hpp"
#include "pmx/energy.hpp"
#include "pmx/state.hpp"

namespace pmx {

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  std::vector<State> snapshots;
  State final_state;
};

/// Runs the configured PDE simulation, keeping a record and a snapshot at every record time.
SimulationResult simulate(const RunConfig& config);

/// Steady state of the configured system.
SteadyState compute_steady(const RunConfig& config);

/// Writes <prefix>_densities.csv and <prefix>_norms.csv into the output directory.
void write_simulation(const RunConfig& config, const SimulationResult& result,
                      const std::string& prefix);

/// Writes <prefix>_steady.csv.
void write_steady(const RunConfig& config, const SteadyState& steady, const std::string& prefix);

struct SweepOutcome {
  double delta = 0.0;
  SimulationResult result;
  SweepRecord norms;
};

/// Runs `config` once per delta value, concurrently; results are in input order.
std::vector<SweepOutcome> run_sweep(const RunConfig& config, std::span<const double> deltas);

/// File prefix used for one member of a sweep.
std::string sweep_prefix(const std::string& prefix, double delta);

// Subcommands. Each writes its CSV files and a short summary to `log`; errors
// propagate as exceptions (ConfigError, NumericalBlowup, SolverError, IoError).

void command_run(const RunConfig& config, std::ostream& log);
void command_steady(const RunConfig& config, std::ostream& log);
void command_sweep(const RunConfig& config, std::span<const double> deltas, std::ostream& log);
void command_particles(const RunConfig& config, std::ostream& log);

/// Prints the aligned report followed by the CSV block to `out`.
void command_bounds(const BoundsReport& report, std::ostream& out);

struct ExampleOptions {
  std::filesystem::path output_dir = ".";
  std::vector<double> deltas;            // empty: the example's own list
  std::optional<double> t_end;           // override the final time
  std::optional<TimeSection> time;       // override the whole time section
  bool include_strong = true;            // example 4: also sweep the strong potentials
};

void run_example(int example, const ExampleOptions& options, std::ostream& log);

}  // namespace pmx
