#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "accelfront/diagnostics.hpp"
#include "accelfront/dispersal.hpp"
#include "accelfront/grid.hpp"
#include "accelfront/reaction.hpp"

namespace accelfront {

/// u0(x) = amplitude * exp(-(x / width)^2).
struct GaussianInitial {
  double amplitude = 1.0;
  double width = 10.0;
};

/// u0(x) = 1 for x < threshold, 0 otherwise.
struct IndicatorInitial {
  double threshold = 0.0;
};

/// Linear interpolation of (x, u) samples, 0 outside the table.
struct TabulatedInitial {
  std::vector<double> x;
  std::vector<double> u;
};

using InitialCondition = std::variant<GaussianInitial, IndicatorInitial, TabulatedInitial>;

enum class Boundary {
  /// The periodic box [-L, L).
  Periodic,
  /// Even reflection at both ends. Spectral operators run on the mirrored
  /// box of twice the size; the finite-volume schemes are zero-flux anyway.
  Reflecting,
};

enum class GuardSides {
  /// Right end for indicator data, both ends otherwise.
  Automatic,
  Both,
  Right,
};

struct RunConfig {
  double half_length = 400.0;
  std::size_t n_points = 8192;
  Boundary boundary = Boundary::Periodic;
  DispersalSpec dispersal = StandardLaplacian{};
  ReactionSpec reaction = KppLogistic{};
  double dt = 0.01;
  double t_end = 20.0;
  /// Sorted times in [0, t_end]. Empty means t = 0, 1, 2, ... plus t_end.
  std::vector<double> snapshot_times;
  InitialCondition initial = GaussianInitial{};
  double guard_threshold = 1e-4;
  GuardSides guard_sides = GuardSides::Automatic;
  /// Stop at the first guard breach. Property checks turn this off because
  /// their claims hold on the periodic box as well.
  bool halt_on_guard_breach = true;
  DiagnosticsPlan diagnostics;

  Grid grid() const { return Grid(half_length, n_points); }
};

/// Throws Error(InvalidConfig) and the dispersal/reaction validation errors.
void validate(const RunConfig& config);

/// Effective snapshot schedule: sorted, deduplicated, always starting at 0.
std::vector<double> snapshot_schedule(const RunConfig& config);

Field initial_field(const RunConfig& config);

struct GuardStatus {
  bool breached = false;
  double time = 0.0;  ///< first breach time when breached
  double peak = 0.0;  ///< largest value seen in the guard band
};

struct Trajectory {
  RunConfig config;
  std::vector<Snapshot> snapshots;
  GuardStatus guard;
  /// Largest pre-clamp excursion outside [0, 1] over all steps.
  double max_overshoot = 0.0;
  std::size_t steps = 0;
};

/// One Strang step R(dt/2) D(dt) R(dt/2) followed by the clamp.
/// Returns the pre-clamp overshoot.
double strang_step_in_place(Field& field, DispersalOperator& dispersal,
                            const ReactionSpec& reaction, double dt);
Field strang_step(const Field& field, DispersalOperator& dispersal, const ReactionSpec& reaction,
                  double dt);

/// Time stepper for one configuration. Handles the reflecting extension and
/// the boundary guard; field() is always on the configured grid.
class Simulation {
 public:
  Simulation(RunConfig config, const Field& initial);

  const RunConfig& config() const noexcept { return config_; }
  double time() const noexcept { return time_; }
  const Field& field() const noexcept { return view_; }
  const GuardStatus& guard() const noexcept { return guard_; }
  double max_overshoot() const noexcept { return max_overshoot_; }
  std::size_t steps() const noexcept { return steps_; }

  /// Advances by one step ending exactly at `target` (> time()). Step sizes
  /// within 1e-9 relative of dt are snapped to dt.
  void step_to(double target);

 private:
  void refresh_view();
  void check_guard();

  RunConfig config_;
  GuardSides sides_;
  bool mirrored_;
  Field state_;
  Field view_;
  DispersalOperator dispersal_;
  double time_ = 0.0;
  GuardStatus guard_;
  double max_overshoot_ = 0.0;
  std::size_t steps_ = 0;
};

/// Step end times from 0 to the last snapshot: fixed dt, with the last step
/// before each snapshot shortened to land on it.
std::vector<double> step_times(const std::vector<double>& snapshots, double dt);

using StepObserver = std::function<void(const Simulation&)>;

Trajectory run(const RunConfig& config);
Trajectory run(const RunConfig& config, const Field& initial, const StepObserver& observer = {});

/// Throws GuardBreachedError if the trajectory's guard tripped.
void require_clean_guard(const Trajectory& trajectory);

/// Snapshot dump: "# t=<value>" then N lines "x u", per snapshot.
void write_trajectory(std::ostream& out, const Trajectory& trajectory);
std::vector<Snapshot> read_trajectory(std::istream& in);

}  // namespace accelfront
