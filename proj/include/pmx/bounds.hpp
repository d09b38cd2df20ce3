#pragma once

#include "pmx/grid.hpp"
#include "pmx/system.hpp"

namespace pmx {

/// Poincare-Wirtinger constant of an interval: (|O| / pi)^2.
double poincare_constant(double omega_len);

/// C_O = 2 max{ 1 + C_P, T/|O| + 2|O|(1 + C_P)(e^-1 + 2 T C_L^2) }.
/// Throws std::domain_error for omega_len <= 0 or negative arguments.
double c_omega(double horizon, double c_l, double omega_len, double c_p);

/// 1 / sqrt(c_f^2 c_omega); the smoothing constant of the existence theorem is taken as 1.
double delta_max(double c_omega, double c_f = 1.0);

/// Candidate values for the drift bound C_L computed from the potentials.
struct DriftBoundCandidates {
  double l2 = 0.0;  // max_i ||V_i||_L2
  double c0 = 0.0;  // max_i ||V_i||_sup
  double c2 = 0.0;  // max_i max(||V_i||, ||V_i'||, ||V_i''||)_sup
};

DriftBoundCandidates c_l_from_potentials(const SystemSpec& spec, const Grid1D& grid);

struct BoundsReport {
  double c_p = 0.0;
  double c_l = 0.0;
  double c_f = 1.0;
  double omega_len = 0.0;
  double horizon = 0.0;
  double c_omega = 0.0;
  double delta_max = 0.0;
};

/// Assembles the report; c_p <= 0 selects poincare_constant(omega_len).
BoundsReport make_bounds_report(double horizon, double c_l, double omega_len,
                                double c_p = 0.0, double c_f = 1.0);

}  // namespace pmx
