#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmx/grid.hpp"
#include "pmx/system.hpp"

namespace pmx {

/// Row-major M x J array of cell averages.
class DensityField {
 public:
  DensityField() = default;
  DensityField(std::size_t species, std::size_t cells, double value = 0.0)
      : species_(species), cells_(cells), data_(species * cells, value) {}

  std::size_t species() const noexcept { return species_; }
  std::size_t cells() const noexcept { return cells_; }

  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cells_, cells_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cells_, cells_};
  }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cells_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cells_ + j];
  }

  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const DensityField&) const = default;

 private:
  std::size_t species_ = 0;
  std::size_t cells_ = 0;
  std::vector<double> data_;
};

struct State {
  double t = 0.0;
  DensityField u;

  bool operator==(const State&) const = default;
};

/// dx * sum_j u_j.
double discrete_mass(std::span<const double> row, const Grid1D& grid);

/// Samples each species' initial profile at cell centers and rescales it to
/// the configured mass. Throws ConfigError if a profile vanishes on the grid.
State build_initial_state(const SystemSpec& spec, const Grid1D& grid);

}  // namespace pmx
