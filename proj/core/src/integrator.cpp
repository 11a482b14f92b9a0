#include "accelfront/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double interpolate_table(const TabulatedInitial& table, double x) {
  const auto& xs = table.x;
  if (x < xs.front() || x > xs.back()) return 0.0;
  const auto hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
  if (hi >= xs.size()) return table.u.back();
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * table.u[lo] + w * table.u[hi];
}

bool spectral(const DispersalSpec& spec) { return !std::holds_alternative<FastDiffusion>(spec); }

GuardSides resolve_sides(const RunConfig& config) {
  if (config.guard_sides != GuardSides::Automatic) return config.guard_sides;
  return std::holds_alternative<IndicatorInitial>(config.initial) ? GuardSides::Right
                                                                 : GuardSides::Both;
}

}  // namespace

void validate(const RunConfig& config) {
  (void)config.grid();
  validate_dispersal(config.dispersal);
  if (!std::holds_alternative<NoReaction>(config.reaction)) validate_reaction(config.reaction);
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw Error(ErrorKind::InvalidConfig, "dt must be positive, got " + num(config.dt));
  }
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    throw Error(ErrorKind::InvalidConfig, "t_end must be >= 0, got " + num(config.t_end));
  }
  if (!(config.guard_threshold > 0.0 && config.guard_threshold < 0.5)) {
    throw Error(ErrorKind::InvalidConfig, "guard threshold must lie in (0, 0.5)");
  }
  for (std::size_t i = 0; i < config.snapshot_times.size(); ++i) {
    const double t = config.snapshot_times[i];
    if (!(t >= 0.0 && t <= config.t_end)) {
      throw Error(ErrorKind::InvalidConfig, "snapshot time " + num(t) + " outside [0, t_end]");
    }
    if (i > 0 && !(t > config.snapshot_times[i - 1])) {
      throw Error(ErrorKind::InvalidConfig, "snapshot times must be strictly increasing");
    }
  }
  for (double lambda : config.diagnostics.levels) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
      throw Error(ErrorKind::InvalidConfig, "diagnostic level " + num(lambda) + " outside (0, 1)");
    }
  }
  if (const auto* table = std::get_if<TabulatedInitial>(&config.initial)) {
    if (table->x.size() < 2 || table->x.size() != table->u.size()) {
      throw Error(ErrorKind::InvalidConfig, "tabulated initial condition needs >= 2 rows");
    }
    for (std::size_t i = 0; i < table->x.size(); ++i) {
      if (i > 0 && !(table->x[i] > table->x[i - 1])) {
        throw Error(ErrorKind::InvalidConfig, "tabulated initial x must increase");
      }
      if (!(table->u[i] >= 0.0 && table->u[i] <= 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "tabulated initial values must lie in [0, 1]");
      }
    }
  }
}

std::vector<double> snapshot_schedule(const RunConfig& config) {
  std::vector<double> times{0.0};
  if (config.snapshot_times.empty()) {
    for (double t = 1.0; t < config.t_end; t += 1.0) times.push_back(t);
    if (config.t_end > 0.0) times.push_back(config.t_end);
  } else {
    for (double t : config.snapshot_times) {
      if (t > 0.0) times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
  }
  return times;
}

Field initial_field(const RunConfig& config) {
  const Grid grid = config.grid();
  return std::visit(
      [&](const auto& ic) {
        using T = std::decay_t<decltype(ic)>;
        if constexpr (std::is_same_v<T, GaussianInitial>) {
          return Field::from_function(grid, [&](double x) {
            const double s = x / ic.width;
            return ic.amplitude * std::exp(-s * s);
          });
        } else if constexpr (std::is_same_v<T, IndicatorInitial>) {
          return Field::from_function(grid, [&](double x) { return x < ic.threshold ? 1.0 : 0.0; });
        } else {
          return Field::from_function(grid, [&](double x) { return interpolate_table(ic, x); });
        }
      },
      config.initial);
}

double strang_step_in_place(Field& field, DispersalOperator& dispersal,
                            const ReactionSpec& reaction, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "Strang step needs dt > 0");
  react_in_place(field, reaction, 0.5 * dt);
  dispersal.advance(field, dt);
  react_in_place(field, reaction, 0.5 * dt);
  return field.clamp();
}

Field strang_step(const Field& field, DispersalOperator& dispersal, const ReactionSpec& reaction,
                  double dt) {
  Field out = field;
  strang_step_in_place(out, dispersal, reaction, dt);
  return out;
}

namespace {

Field mirror(const Field& u) {
  // Half-sample even extension onto the doubled box.
  const std::size_t n = u.size();
  const Grid& g = u.grid();
  std::vector<double> ext(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    ext[i] = u[i];
    ext[2 * n - 1 - i] = u[i];
  }
  return Field(Grid(2.0 * g.half_length(), 2 * n), std::move(ext));
}

}  // namespace

Simulation::Simulation(RunConfig config, const Field& initial)
    : config_(std::move(config)),
      sides_(resolve_sides(config_)),
      mirrored_(config_.boundary == Boundary::Reflecting && spectral(config_.dispersal)),
      state_(mirrored_ ? mirror(initial) : initial),
      view_(initial),
      dispersal_(config_.dispersal, state_.grid(),
                 config_.boundary == Boundary::Reflecting ? FiniteVolumeEnds::ZeroFlux
                                                          : FiniteVolumeEnds::Periodic) {
  validate(config_);
  if (!(initial.grid() == config_.grid())) {
    throw Error(ErrorKind::LengthMismatch, "initial field is not on the configured grid");
  }
}

void Simulation::refresh_view() {
  if (!mirrored_) {
    view_ = state_;
    return;
  }
  const auto src = state_.values();
  std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(view_.size()),
            view_.values().begin());
}

void Simulation::check_guard() {
  const std::size_t n = view_.size();
  const std::size_t band = std::max<std::size_t>(1, n / 100);
  double peak = 0.0;
  for (std::size_t i = n - band; i < n; ++i) peak = std::max(peak, view_[i]);
  if (sides_ == GuardSides::Both) {
    for (std::size_t i = 0; i < band; ++i) peak = std::max(peak, view_[i]);
  }
  guard_.peak = std::max(guard_.peak, peak);
  if (!guard_.breached && peak > config_.guard_threshold) {
    guard_.breached = true;
    guard_.time = time_;
  }
}

void Simulation::step_to(double target) {
  double h = target - time_;
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidConfig, "step target must lie ahead");
  if (std::abs(h - config_.dt) <= 1e-9 * config_.dt) h = config_.dt;
  const double overshoot = strang_step_in_place(state_, dispersal_, config_.reaction, h);
  max_overshoot_ = std::max(max_overshoot_, overshoot);
  time_ = target;
  ++steps_;
  refresh_view();
  check_guard();
}

std::vector<double> step_times(const std::vector<double>& snapshots, double dt) {
  std::vector<double> out;
  double start = 0.0;
  for (double target : snapshots) {
    if (!(target > start)) continue;
    const double span = target - start;
    const auto count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt - 1e-9)));
    for (std::size_t j = 1; j < count; ++j) out.push_back(start + static_cast<double>(j) * dt);
    out.push_back(target);
    start = target;
  }
  return out;
}

Trajectory run(const RunConfig& config) { return run(config, initial_field(config)); }

Trajectory run(const RunConfig& config, const Field& initial, const StepObserver& observer) {
  Simulation sim(config, initial);
  Trajectory traj;
  traj.config = config;
  const std::vector<double> snaps = snapshot_schedule(config);
  traj.snapshots.push_back({0.0, initial});

  std::size_t next_snapshot = 1;
  for (double t : step_times(snaps, config.dt)) {
    sim.step_to(t);
    if (observer) observer(sim);
    if (next_snapshot < snaps.size() && t == snaps[next_snapshot]) {
      traj.snapshots.push_back({t, sim.field()});
      ++next_snapshot;
    }
    if (sim.guard().breached && config.halt_on_guard_breach) break;
  }
  traj.guard = sim.guard();
  traj.max_overshoot = sim.max_overshoot();
  traj.steps = sim.steps();
  return traj;
}

void require_clean_guard(const Trajectory& trajectory) {
  if (trajectory.guard.breached) {
    throw GuardBreachedError(trajectory.guard.time,
                             "density " + num(trajectory.guard.peak) + " reached the domain ends at t = " +
                                 num(trajectory.guard.time) + "; increase grid.L");
  }
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  out << std::setprecision(17);
  for (const auto& snap : trajectory.snapshots) {
    out << "# t=" << snap.time << '\n';
    const Grid& g = snap.field.grid();
    for (std::size_t i = 0; i < snap.field.size(); ++i) {
      out << g.node(i) << ' ' << snap.field[i] << '\n';
    }
  }
  if (!out) throw Error(ErrorKind::IoFailure, "failed writing trajectory");
}

std::vector<Snapshot> read_trajectory(std::istream& in) {
  struct Raw {
    double t;
    std::vector<double> x, u;
  };
  std::vector<Raw> raw;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# t=", 0) == 0) {
      raw.push_back({std::stod(line.substr(4)), {}, {}});
      continue;
    }
    if (raw.empty()) throw Error(ErrorKind::ParseError, "data before the first '# t=' header");
    std::istringstream row(line);
    double x = 0.0;
    double u = 0.0;
    if (!(row >> x >> u)) throw Error(ErrorKind::ParseError, "bad trajectory line: " + line);
    raw.back().x.push_back(x);
    raw.back().u.push_back(u);
  }
  std::vector<Snapshot> out;
  for (auto& r : raw) {
    if (r.x.size() < 2) throw Error(ErrorKind::ParseError, "snapshot with fewer than 2 rows");
    const Grid grid(-r.x.front(), r.x.size());
    out.push_back({r.t, Field(grid, std::move(r.u))});
  }
  return out;
}

}  // namespace accelfront
