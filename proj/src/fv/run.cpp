#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "pmx/errors.hpp"
#include "pmx/fv.hpp"

namespace pmx {

std::vector<double> equally_spaced_times(double t_end, int intervals) {
  if (intervals < 1) throw ConfigError("record count must be at least 1");
  std::vector<double> times(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) times[static_cast<std::size_t>(k)] = t_end * k / intervals;
  times.back() = t_end;
  return times;
}

namespace {

void check_record_times(std::span<const double> times, double t_end) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0 && times[k] <= t_end))
      throw ConfigError("record times must lie in [0, t_end]");
    if (k > 0 && times[k] < times[k - 1]) throw ConfigError("record times must be sorted");
  }
}

class Recorder {
 public:
  Recorder(std::span<const double> times, const SystemSpec& spec, const Grid1D& grid,
           const DiagnosticsSink& sink)
      : times_(times), spec_(spec), grid_(grid), sink_(sink) {}

  /// Emits one record for every pending time <= t + slack.
  void offer(const State& state, double slack) {
    bool due = false;
    while (next_ < times_.size() && times_[next_] <= state.t + slack) {
      ++next_;
      due = true;
    }
    if (due && sink_) sink_(make_record(state, spec_, grid_), state);
  }

  std::size_t pending() const noexcept { return next_; }
  double next_time() const noexcept { return times_[next_]; }
  bool done() const noexcept { return next_ >= times_.size(); }

 private:
  std::span<const double> times_;
  const SystemSpec& spec_;
  const Grid1D& grid_;
  const DiagnosticsSink& sink_;
  std::size_t next_ = 0;
};

}  // namespace

State run_from(State state, const SystemSpec& spec, const Grid1D& grid, double t_end,
               const TimeMode& mode, std::span<const double> record_times,
               const DiagnosticsSink& sink) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  check_record_times(record_times, t_end);
  Stepper stepper(spec, grid);
  Recorder recorder(record_times, spec, grid, sink);
  const double t0 = state.t;

  if (const auto* fixed = std::get_if<FixedStep>(&mode)) {
    const double dt = fixed->dt;
    if (!(dt > 0.0)) throw ConfigError("fixed time step must be positive");
    const double slack = 1e-9 * dt;
    recorder.offer(state, slack);
    const auto steps = static_cast<std::int64_t>(std::ceil((t_end - t0) / dt - 1e-9));
    for (std::int64_t n = 1; n <= steps; ++n) {
      const double target = n == steps ? t_end : t0 + static_cast<double>(n) * dt;
      const double h = n == steps ? t_end - state.t : dt;
      if (h > 0.0) stepper.advance(state, h);
      state.t = target;
      recorder.offer(state, slack);
    }
  } else {
    const auto& adaptive = std::get<AdaptiveStep>(mode);
    recorder.offer(state, 0.0);
    while (state.t < t_end) {
      double dt = stepper.stable_dt(state, adaptive.safety, adaptive.dt_cap);
      const double stop = recorder.done() ? t_end : std::min(recorder.next_time(), t_end);
      double target = state.t + dt;
      if (target >= stop - 1e-12 * dt) target = stop;
      dt = target - state.t;
      if (dt > 0.0) stepper.advance(state, dt);
      state.t = target;
      recorder.offer(state, 0.0);
    }
  }
  recorder.offer(state, std::numeric_limits<double>::infinity());
  return state;
}

State run(const SystemSpec& spec, const Grid1D& grid, double t_end, const TimeMode& mode,
          std::span<const double> record_times, const DiagnosticsSink& sink) {
  return run_from(build_initial_state(spec, grid), spec, grid, t_end, mode, record_times, sink);
}

}  // namespace pmx
