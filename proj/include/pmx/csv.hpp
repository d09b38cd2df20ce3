#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pmx/bounds.hpp"
#include "pmx/diagnostics.hpp"
#include "pmx/energy.hpp"
#include "pmx/grid.hpp"
#include "pmx/particles.hpp"
#include "pmx/state.hpp"

namespace pmx::csv {

/// Full-precision scientific notation (round-trips through from_chars).
std::string number(double v);

/// Shortest round-trip form, used in file names.
std::string short_number(double v);

// Species are numbered from 1 in every file.

/// t,species,x,u
void write_densities(std::ostream& out, std::span<const State> snapshots, const Grid1D& grid);

/// t,species,mass,min,l2,h1semi,tv,entropy_pos,energy
void write_norms(std::ostream& out, std::span<const DiagnosticsRecord> records);

/// delta,u_2T,grad_u_2T,tv_T
void write_sweep(std::ostream& out, std::span<const SweepRecord> rows);

/// T,c_l,omega_len,c_p,c_f,c_omega,delta_max
void write_bounds(std::ostream& out, std::span<const BoundsReport> rows);

struct HistogramSnapshot {
  double t = 0.0;
  std::vector<std::vector<double>> density;  // per species, one value per cell
};

/// t,species,x,density
void write_particles(std::ostream& out, std::span<const HistogramSnapshot> snapshots,
                     const Grid1D& grid);

/// t,species,index,x
void write_positions(std::ostream& out, std::span<const ParticleState> snapshots);

struct ComparisonRow {
  double t_end = 0.0;
  int count = 0;
  double range = 0.0;
  double l1_distance = 0.0;
};

/// T,N,eps,l1_distance (one row per species, in species order)
void write_comparison(std::ostream& out, std::span<const ComparisonRow> rows);

/// species,x,u_inf,c
void write_steady(std::ostream& out, const SteadyState& steady, const Grid1D& grid);

/// Writes `content` to `path`, creating parent directories; throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pmx::csv
