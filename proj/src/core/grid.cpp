#include "pmx/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmx/errors.hpp"

namespace pmx {

Grid1D::Grid1D(double x_min, double x_max, int cells)
    : x_min_(x_min), x_max_(x_max), cells_(cells) {
  if (!(cells >= 2))
    throw ConfigError("grid needs at least 2 cells, got " + std::to_string(cells));
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
    throw ConfigError("grid interval must satisfy x_max > x_min");
  dx_ = (x_max - x_min) / cells;
  centers_.resize(static_cast<std::size_t>(cells));
  for (std::size_t j = 0; j < centers_.size(); ++j)
    centers_[j] = x_min + (static_cast<double>(j) + 0.5) * dx_;
}

std::size_t Grid1D::cell_of(double x) const noexcept {
  const double s = std::floor((x - x_min_) / dx_);
  if (!(s > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(s), size() - 1);
}

Grid1D make_grid(double x_min, double x_max, int cells) {
  return Grid1D(x_min, x_max, cells);
}

}  // namespace pmx
