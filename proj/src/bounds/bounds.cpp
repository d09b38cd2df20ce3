#include "pmx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pmx {

double poincare_constant(double omega_len) {
  if (!(omega_len > 0.0)) throw std::domain_error("domain length must be positive");
  const double r = omega_len / std::numbers::pi;
  return r * r;
}

double c_omega(double horizon, double c_l, double omega_len, double c_p) {
  if (!(omega_len > 0.0)) throw std::domain_error("domain length must be positive");
  if (!(horizon >= 0.0) || !(c_l >= 0.0) || !(c_p >= 0.0))
    throw std::domain_error("T, C_L and C_P must be non-negative");
  const double first = 1.0 + c_p;
  const double second = horizon / omega_len +
                        2.0 * omega_len * (1.0 + c_p) *
                            (std::exp(-1.0) + 2.0 * horizon * c_l * c_l);
  return 2.0 * std::max(first, second);
}

double delta_max(double c_omega, double c_f) {
  if (!(c_omega > 0.0) || !(c_f > 0.0))
    throw std::domain_error("C_O and C_F must be positive");
  return 1.0 / std::sqrt(c_f * c_f * c_omega);
}

DriftBoundCandidates c_l_from_potentials(const SystemSpec& spec, const Grid1D& grid) {
  DriftBoundCandidates out;
  const double dx = grid.dx();
  const double reach = std::max(std::abs(grid.x_min()), std::abs(grid.x_max()));
  for (const auto& s : spec.species) {
    const auto v = s.potential.sample(grid);
    double sq = 0.0;
    double sup = 0.0;
    for (double x : v) {
      sq += x * x;
      sup = std::max(sup, std::abs(x));
    }
    double d1 = 0.0;
    double d2 = 0.0;
    switch (s.potential.kind) {
      case PotentialSpec::Kind::zero:
        break;
      case PotentialSpec::Kind::quadratic: {
        const double a = std::abs(s.potential.coefficient);
        sup = a * reach * reach;
        d1 = 2.0 * a * reach;
        d2 = 2.0 * a;
        break;
      }
      case PotentialSpec::Kind::tabulated:
        for (std::size_t j = 0; j + 1 < v.size(); ++j)
          d1 = std::max(d1, std::abs(v[j + 1] - v[j]) / dx);
        for (std::size_t j = 1; j + 1 < v.size(); ++j)
          d2 = std::max(d2, std::abs(v[j + 1] - 2.0 * v[j] + v[j - 1]) / (dx * dx));
        break;
    }
    // quadratic potentials use exact sup norms over the closed interval;
    // the L2 norm is always the midpoint rule
    out.l2 = std::max(out.l2, std::sqrt(dx * sq));
    out.c0 = std::max(out.c0, sup);
    out.c2 = std::max(out.c2, std::max({sup, d1, d2}));
  }
  return out;
}

BoundsReport make_bounds_report(double horizon, double c_l, double omega_len, double c_p,
                                double c_f) {
  BoundsReport r;
  r.omega_len = omega_len;
  r.c_p = c_p > 0.0 ? c_p : poincare_constant(omega_len);
  r.c_l = c_l;
  r.c_f = c_f;
  r.horizon = horizon;
  r.c_omega = c_omega(horizon, c_l, omega_len, r.c_p);
  r.delta_max = delta_max(r.c_omega, c_f);
  return r;
}

}  // namespace pmx
