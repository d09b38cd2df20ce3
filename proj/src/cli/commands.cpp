#include "pmx/commands.hpp"

#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>

#include "pmx/csv.hpp"
#include "pmx/errors.hpp"
#include "pmx/fv.hpp"
#include "pmx/particles.hpp"
#include "pmx/presets.hpp"

namespace pmx {

namespace {

std::filesystem::path output_path(const RunConfig& config, const std::string& name) {
  return std::filesystem::path(config.output.directory) / name;
}

template <class Writer>
void write_csv(const std::filesystem::path& path, Writer&& writer) {
  std::ostringstream out;
  writer(out);
  csv::write_file(path, out.str());
}

void warn_about_delta(const RunConfig& config, std::ostream& log) {
  const double dt = config.time.mode == TimeSection::Mode::fixed ? config.time.dt : 0.0;
  const Grid1D grid = config.make_grid();
  const double c_l = c_l_from_potentials(config.system(grid), grid).c2;
  const auto report = make_bounds_report(dt, c_l, grid.length());
  if (std::abs(config.delta) > report.delta_max)
    log << "note: |delta| = " << config.delta << " exceeds delta_max(dt) = " << report.delta_max
        << " (C_L = " << c_l << "); outside the guaranteed existence range\n";
}

}  // namespace

SimulationResult simulate(const RunConfig& config) {
  const Grid1D grid = config.make_grid();
  const SystemSpec spec = config.system(grid);
  SimulationResult result;
  const auto times = config.record_times();
  result.final_state = run(spec, grid, config.time.t_end, config.time.time_mode(), times,
                           [&](const DiagnosticsRecord& r, const State& s) {
                             result.records.push_back(r);
                             result.snapshots.push_back(s);
                           });
  return result;
}

SteadyState compute_steady(const RunConfig& config) {
  const Grid1D grid = config.make_grid();
  return steady_state(config.system(grid), grid, config.steady.options());
}

void write_simulation(const RunConfig& config, const SimulationResult& result,
                      const std::string& prefix) {
  const Grid1D grid = config.make_grid();
  write_csv(output_path(config, prefix + "_densities.csv"),
            [&](std::ostream& out) { csv::write_densities(out, result.snapshots, grid); });
  write_csv(output_path(config, prefix + "_norms.csv"),
            [&](std::ostream& out) { csv::write_norms(out, result.records); });
}

void write_steady(const RunConfig& config, const SteadyState& steady, const std::string& prefix) {
  const Grid1D grid = config.make_grid();
  write_csv(output_path(config, prefix + "_steady.csv"),
            [&](std::ostream& out) { csv::write_steady(out, steady, grid); });
}

std::string sweep_prefix(const std::string& prefix, double delta) {
  return prefix + "_delta" + csv::short_number(delta);
}

std::vector<SweepOutcome> run_sweep(const RunConfig& config, std::span<const double> deltas) {
  std::vector<std::future<SweepOutcome>> jobs;
  for (double delta : deltas) {
    RunConfig member = config;
    member.delta = delta;
    jobs.push_back(std::async(std::launch::async, [member, delta] {
      SweepOutcome outcome;
      outcome.delta = delta;
      outcome.result = simulate(member);
      outcome.norms = integrated_norms(outcome.result.records, delta);
      return outcome;
    }));
  }
  std::vector<SweepOutcome> outcomes;
  for (auto& job : jobs) outcomes.push_back(job.get());
  return outcomes;
}

void command_run(const RunConfig& config, std::ostream& log) {
  warn_about_delta(config, log);
  const auto result = simulate(config);
  write_simulation(config, result, config.output.prefix);
  log << "run: " << result.records.size() << " records to t = " << result.final_state.t
      << ", files " << config.output.prefix << "_{densities,norms}.csv in "
      << config.output.directory << "\n";
}

void command_steady(const RunConfig& config, std::ostream& log) {
  const auto steady = compute_steady(config);
  write_steady(config, steady, config.output.prefix);
  log << "steady: iterations " << steady.iterations << ", residual " << steady.residual
      << (steady.converged ? "" : " (NOT converged)") << ", c =";
  for (double c : steady.lagrange_c) log << " " << csv::number(c);
  log << "\n";
}

void command_sweep(const RunConfig& config, std::span<const double> deltas, std::ostream& log) {
  if (deltas.empty()) throw ConfigError("sweep needs at least one delta value");
  const auto outcomes = run_sweep(config, deltas);
  std::vector<SweepRecord> rows;
  for (const auto& o : outcomes) {
    RunConfig member = config;
    member.delta = o.delta;
    write_simulation(member, o.result, sweep_prefix(config.output.prefix, o.delta));
    rows.push_back(o.norms);
  }
  write_csv(output_path(config, config.output.prefix + "_sweep.csv"),
            [&](std::ostream& out) { csv::write_sweep(out, rows); });
  log << "sweep: " << rows.size() << " delta values, summary " << config.output.prefix
      << "_sweep.csv\n";
}

void command_particles(const RunConfig& config, std::ostream& log) {
  if (!config.particles) throw ConfigError("particles command needs a [particles] section");
  const Grid1D grid = config.make_grid();
  const SystemSpec system = config.system(grid);
  ParticleRunSettings settings;
  settings.counts = config.particles->counts;
  if (settings.counts.empty()) settings.counts.assign(system.count(), 1000);
  settings.range = config.particles->range;
  settings.dt = config.particles->dt;
  settings.seed = config.particles->seed;
  settings.sampling = config.particles->sampling;
  settings.kernel = config.particles->kernel;
  settings.stability_cap = config.particles->stability_cap;
  const ParticleSpec spec = make_particle_spec(system, grid, settings);

  const State initial = build_initial_state(system, grid);
  const auto times = config.record_times();
  std::vector<ParticleState> snapshots;
  const ParticleState final_state =
      run_particles(sample_particles(initial.u, spec, settings.sampling), spec,
                    config.time.t_end, settings.dt, times,
                    [&](const ParticleState& s) { snapshots.push_back(s); },
                    settings.stability_cap);
  std::vector<csv::HistogramSnapshot> histograms;
  for (const auto& s : snapshots) {
    csv::HistogramSnapshot h{s.t, {}};
    for (std::size_t i = 0; i < system.count(); ++i) h.density.push_back(empirical_density(s, grid, i));
    histograms.push_back(std::move(h));
  }

  const State pde = run_from(initial, system, grid, config.time.t_end, config.time.time_mode(), {}, {});
  std::vector<csv::ComparisonRow> rows;
  for (std::size_t i = 0; i < system.count(); ++i) {
    const auto hist = empirical_density(final_state, grid, i);
    double l1 = 0.0;
    for (std::size_t j = 0; j < hist.size(); ++j)
      l1 += std::abs(hist[j] - pde.u(i, j) / system.species[i].mass);
    rows.push_back({config.time.t_end, settings.counts[i], settings.range, grid.dx() * l1});
  }

  const auto& prefix = config.output.prefix;
  write_csv(output_path(config, prefix + "_particles.csv"),
            [&](std::ostream& out) { csv::write_particles(out, histograms, grid); });
  write_csv(output_path(config, prefix + "_positions.csv"),
            [&](std::ostream& out) { csv::write_positions(out, snapshots); });
  write_csv(output_path(config, prefix + "_comparison.csv"),
            [&](std::ostream& out) { csv::write_comparison(out, rows); });
  log << "particles: T = " << config.time.t_end;
  for (std::size_t i = 0; i < rows.size(); ++i)
    log << ", species " << i + 1 << " L1 distance " << rows[i].l1_distance;
  log << "\n";
}

void command_bounds(const BoundsReport& r, std::ostream& out) {
  out << std::left << std::setprecision(6);
  const auto line = [&](const char* name, double v) {
    out << "  " << std::setw(12) << name << v << "\n";
  };
  out << "bounds report\n";
  line("T", r.horizon);
  line("|Omega|", r.omega_len);
  line("C_P", r.c_p);
  line("C_L", r.c_l);
  line("C_F", r.c_f);
  line("C_Omega", r.c_omega);
  line("delta_max", r.delta_max);
  out << "  (smoothing constant alpha taken as 1)\n\n";
  csv::write_bounds(out, std::span<const BoundsReport>(&r, 1));
}

void run_example(int example, const ExampleOptions& options, std::ostream& log) {
  const auto deltas = options.deltas.empty() ? example_deltas(example) : options.deltas;
  const auto variants = example == 4 && options.include_strong ? std::vector<bool>{false, true}
                                                               : std::vector<bool>{false};
  for (const bool strong : variants) {
    RunConfig base = example_config(example, deltas.front(), strong);
    if (options.time) base.time = *options.time;
    if (options.t_end) base.time.t_end = *options.t_end;
    base.output.directory = options.output_dir.string();

    const auto outcomes = run_sweep(base, deltas);
    std::vector<SweepRecord> rows;
    for (const auto& o : outcomes) {
      RunConfig member = base;
      member.delta = o.delta;
      const std::string prefix = sweep_prefix(base.output.prefix, o.delta);
      write_simulation(member, o.result, prefix);
      if (std::abs(o.delta) < 1.0) write_steady(member, compute_steady(member), prefix);
      rows.push_back(o.norms);
      log << "example " << example << (strong ? " (strong potentials)" : "") << ": delta "
          << o.delta << " done\n";
    }
    if (example == 4)
      write_csv(options.output_dir / (strong ? "sweep_strong.csv" : "sweep.csv"),
                [&](std::ostream& out) { csv::write_sweep(out, rows); });
  }
}

}  // namespace pmx
