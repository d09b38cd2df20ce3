#include "pmx/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pmx/errors.hpp"

namespace pmx::csv {

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string short_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_densities(std::ostream& out, std::span<const State> snapshots, const Grid1D& grid) {
  out << "t,species,x,u\n";
  for (const auto& s : snapshots)
    for (std::size_t i = 0; i < s.u.species(); ++i)
      for (std::size_t j = 0; j < s.u.cells(); ++j)
        out << number(s.t) << ',' << i + 1 << ',' << number(grid.center(j)) << ','
            << number(s.u(i, j)) << '\n';
}

void write_norms(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "t,species,mass,min,l2,h1semi,tv,entropy_pos,energy\n";
  for (const auto& r : records)
    for (std::size_t i = 0; i < r.species.size(); ++i) {
      const auto& n = r.species[i];
      out << number(r.t) << ',' << i + 1 << ',' << number(n.mass) << ',' << number(n.min_density)
          << ',' << number(n.l2) << ',' << number(n.h1semi) << ',' << number(n.tv) << ','
          << number(n.entropy_pos) << ',' << number(r.energy) << '\n';
    }
}

void write_sweep(std::ostream& out, std::span<const SweepRecord> rows) {
  out << "delta,u_2T,grad_u_2T,tv_T\n";
  for (const auto& r : rows)
    out << number(r.delta) << ',' << number(r.u_2T) << ',' << number(r.grad_u_2T) << ','
        << number(r.tv_T) << '\n';
}

void write_bounds(std::ostream& out, std::span<const BoundsReport> rows) {
  out << "T,c_l,omega_len,c_p,c_f,c_omega,delta_max\n";
  for (const auto& r : rows)
    out << number(r.horizon) << ',' << number(r.c_l) << ',' << number(r.omega_len) << ','
        << number(r.c_p) << ',' << number(r.c_f) << ',' << number(r.c_omega) << ','
        << number(r.delta_max) << '\n';
}

void write_particles(std::ostream& out, std::span<const HistogramSnapshot> snapshots,
                     const Grid1D& grid) {
  out << "t,species,x,density\n";
  for (const auto& s : snapshots)
    for (std::size_t i = 0; i < s.density.size(); ++i)
      for (std::size_t j = 0; j < s.density[i].size(); ++j)
        out << number(s.t) << ',' << i + 1 << ',' << number(grid.center(j)) << ','
            << number(s.density[i][j]) << '\n';
}

void write_positions(std::ostream& out, std::span<const ParticleState> snapshots) {
  out << "t,species,index,x\n";
  for (const auto& s : snapshots)
    for (std::size_t i = 0; i < s.positions.size(); ++i)
      for (std::size_t k = 0; k < s.positions[i].size(); ++k)
        out << number(s.t) << ',' << i + 1 << ',' << k << ',' << number(s.positions[i][k]) << '\n';
}

void write_comparison(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << "T,N,eps,l1_distance\n";
  for (const auto& r : rows)
    out << number(r.t_end) << ',' << r.count << ',' << number(r.range) << ','
        << number(r.l1_distance) << '\n';
}

void write_steady(std::ostream& out, const SteadyState& steady, const Grid1D& grid) {
  out << "species,x,u_inf,c\n";
  for (std::size_t j = 0; j < steady.u_inf.cells(); ++j)
    for (std::size_t i = 0; i < steady.u_inf.species(); ++i)
      out << i + 1 << ',' << number(grid.center(j)) << ',' << number(steady.u_inf(i, j)) << ','
          << number(steady.lagrange_c[i]) << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pmx::csv
