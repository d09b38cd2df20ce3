// pmx: command line front end for the porous-medium cross-diffusion lab.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical blowup, 3 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "pmx/bounds.hpp"
#include "pmx/commands.hpp"
#include "pmx/config.hpp"
#include "pmx/errors.hpp"

namespace {

pmx::RunConfig load(const std::string& path) {
  auto parsed = pmx::load_config(path);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  return parsed.config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Porous-medium cross-diffusion lab: simulation, steady states, bounds, particles"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "simulate one configuration");
  run->add_option("config", config_path, "config file")->required();

  auto* steady = app.add_subcommand("steady", "compute the energy minimizer only");
  steady->add_option("config", config_path, "config file")->required();

  std::vector<double> deltas;
  auto* sweep = app.add_subcommand("sweep", "simulate a list of delta values");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--delta", deltas, "comma separated delta values")->delimiter(',')->required();

  double horizon = 0.0;
  double c_l = 0.0;
  double omega = 2.0;
  double c_p = 0.0;
  double c_f = 1.0;
  auto* bounds = app.add_subcommand("bounds", "evaluate C_Omega and delta_max");
  bounds->add_option("--T", horizon, "final time (use dt for the small-time bound)")->required();
  bounds->add_option("--c-l", c_l, "drift bound C_L")->required();
  bounds->add_option("--omega", omega, "domain length |Omega|")->capture_default_str();
  bounds->add_option("--c-p", c_p, "Poincare constant (default (|Omega|/pi)^2)");
  bounds->add_option("--c-f", c_f, "cross-term bound C_F")->capture_default_str();

  auto* particles = app.add_subcommand("particles", "simulate the particle system and compare");
  particles->add_option("config", config_path, "config file")->required();

  int example = 0;
  std::string out_dir = ".";
  std::vector<double> example_deltas;
  auto* ex = app.add_subcommand("example", "reproduce reference example 1-4");
  ex->add_option("n", example, "example number")->required();
  ex->add_option("--out", out_dir, "output directory")->capture_default_str();
  ex->add_option("--delta", example_deltas, "override the delta list")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) pmx::command_run(load(config_path), std::cout);
    else if (*steady) pmx::command_steady(load(config_path), std::cout);
    else if (*sweep) pmx::command_sweep(load(config_path), deltas, std::cout);
    else if (*particles) pmx::command_particles(load(config_path), std::cout);
    else if (*bounds) pmx::command_bounds(pmx::make_bounds_report(horizon, c_l, omega, c_p, c_f), std::cout);
    else if (*ex) {
      pmx::ExampleOptions options;
      options.output_dir = out_dir;
      options.deltas = example_deltas;
      pmx::run_example(example, options, std::cout);
    }
  } catch (const pmx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const pmx::NumericalBlowup& e) {
    std::cerr << "numerical blowup at t = " << e.time() << ": " << e.what() << "\n";
    return 2;
  } catch (const pmx::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const pmx::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
