#pragma once

#include <vector>

#include "pmx/config.hpp"

namespace pmx {

/// delta values used by the reference examples 1-4.
std::vector<double> example_deltas(int example);

/// Reference configuration of example 1-4 at coupling `delta`:
///   1  left/right bump ICs, V_1 = 0, V_2 = 2x^2, T = 3
///   2  uniform ICs, V_1 = 0, V_2 = 2x^2, T = 3
///   3  left/right bump ICs, V_1 = x^2/2, V_2 = 50x^2, T = 3
///   4  uniform ICs, T = 5; V_1 = 0, V_2 = 2x^2 or, with `strong`, V_1 = x^2/2, V_2 = 50x^2
/// All on [-1, 1] with J = 64, fixed dt = 1e-6 and 10 record intervals.
RunConfig example_config(int example, double delta, bool strong = false);

/// Drift bound C_L quoted for the example's potentials (6 for V_2 = 2x^2, 100 for V_2 = 50x^2).
double example_c_l(int example, bool strong = false);

}  // namespace pmx
