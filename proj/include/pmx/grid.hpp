#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pmx {

/// Uniform cell partition of [x_min, x_max] into J cells.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, int cells);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double length() const noexcept { return x_max_ - x_min_; }
  int cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(cells_); }
  double dx() const noexcept { return dx_; }

  /// Cell center x_j = x_min + (j + 1/2) dx.
  double center(std::size_t j) const noexcept { return centers_[j]; }
  std::span<const double> centers() const noexcept { return centers_; }

  /// Index of the cell containing x; points on the right boundary map to the last cell.
  std::size_t cell_of(double x) const noexcept;

  bool operator==(const Grid1D& other) const = default;

 private:
  double x_min_;
  double x_max_;
  int cells_;
  double dx_;
  std::vector<double> centers_;
};

/// Throws ConfigError unless x_max > x_min and cells >= 2.
Grid1D make_grid(double x_min, double x_max, int cells);

}  // namespace pmx
