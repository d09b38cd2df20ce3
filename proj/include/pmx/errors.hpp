#pragma once

#include <stdexcept>
#include <string>

namespace pmx {

/// Invalid or inconsistent user input (grid, system, config file).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite value appeared in the time stepper.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(double t, const std::string& what)
      : std::runtime_error(what), t_(t) {}

  /// Simulation time at the start of the failing step.
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// An iterative solver could not make progress (e.g. bracket exhausted).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmx
