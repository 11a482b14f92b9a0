#include "accelfront/properties.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

PropertyVerdict make_verdict(std::string name, double tolerance) {
  PropertyVerdict v;
  v.name = std::move(name);
  v.tolerance = tolerance;
  return v;
}

void finish(PropertyVerdict& v) {
  v.violation = std::max(v.violation, 0.0);
  v.pass = v.violation <= v.tolerance;
}

RunConfig unguarded(RunConfig config) {
  config.halt_on_guard_breach = false;
  return config;
}

}  // namespace

std::string format_verdict(const PropertyVerdict& verdict) {
  std::ostringstream os;
  os << verdict.name << ' ' << (verdict.pass ? "pass" : "fail") << ' ' << std::setprecision(6)
     << verdict.violation << ' ' << verdict.tolerance;
  return os.str();
}

PropertyVerdict check_comparison(const Field& u0, const Field& v0, const RunConfig& config,
                                 double tolerance) {
  if (!(u0.grid() == v0.grid())) throw Error(ErrorKind::LengthMismatch, "fields on different grids");
  for (std::size_t i = 0; i < u0.size(); ++i) {
    if (!(0.0 <= u0[i] && u0[i] <= v0[i] && v0[i] <= 1.0)) {
      throw Error(ErrorKind::PreconditionViolated,
                  "comparison needs 0 <= u0 <= v0 <= 1 at every node");
    }
  }
  const RunConfig cfg = unguarded(config);
  Simulation lower(cfg, u0);
  Simulation upper(cfg, v0);
  PropertyVerdict verdict = make_verdict("comparison", tolerance);
  for (double t : step_times(snapshot_schedule(cfg), cfg.dt)) {
    lower.step_to(t);
    upper.step_to(t);
    const Field& u = lower.field();
    const Field& v = upper.field();
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double gap = u[i] - v[i];
      if (gap > verdict.violation) {
        verdict.violation = gap;
        verdict.location = u.grid().node(i);
        verdict.time = t;
      }
    }
  }
  finish(verdict);
  return verdict;
}

PropertyVerdict check_monotone_preservation(const Field& u0, const RunConfig& config,
                                            double tolerance) {
  for (std::size_t i = 0; i + 1 < u0.size(); ++i) {
    if (u0[i + 1] > u0[i]) {
      throw Error(ErrorKind::PreconditionViolated, "initial data must be nonincreasing");
    }
  }
  RunConfig cfg = unguarded(config);
  cfg.boundary = Boundary::Reflecting;
  PropertyVerdict verdict = make_verdict("monotone", tolerance);
  run(cfg, u0, [&](const Simulation& sim) {
    const Field& u = sim.field();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const double rise = u[i + 1] - u[i];
      if (rise > verdict.violation) {
        verdict.violation = rise;
        verdict.location = u.grid().node(i);
        verdict.time = sim.time();
      }
    }
  });
  finish(verdict);
  return verdict;
}

PropertyVerdict check_spreading(const Field& u0, double speed, const RunConfig& config,
                                double level, double trend_tolerance) {
  const auto values = u0.values();
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorKind::ZeroInitialCondition, "spreading needs nonzero initial data");
  }
  if (!(speed > 0.0)) throw Error(ErrorKind::PreconditionViolated, "speed must be positive");
  const Grid grid = config.grid();
  const double reach = speed * config.t_end;
  const double margin = 0.02 * grid.half_length();
  if (!(reach < grid.half_length() - margin)) {
    std::ostringstream os;
    os << "window (0, " << reach << ") reaches the guard band of L = " << grid.half_length();
    throw Error(ErrorKind::DomainTooSmall, os.str());
  }

  const Trajectory traj = run(config, u0);
  require_clean_guard(traj);

  PropertyVerdict verdict = make_verdict("spreading", 0.0);
  double previous = -std::numeric_limits<double>::infinity();
  double worst_drop = 0.0;
  double final_min = 0.0;
  double final_where = 0.0;
  for (const auto& snap : traj.snapshots) {
    double window_min = std::numeric_limits<double>::infinity();
    double where = 0.0;
    for (std::size_t i = 0; i < snap.field.size(); ++i) {
      const double x = grid.node(i);
      if (x > 0.0 && x < reach && snap.field[i] < window_min) {
        window_min = snap.field[i];
        where = x;
      }
    }
    if (previous - window_min > worst_drop) {
      worst_drop = previous - window_min;
      verdict.time = snap.time;
      verdict.location = where;
    }
    previous = window_min;
    final_min = window_min;
    final_where = where;
  }
  const double shortfall = level - final_min;
  const double excess_drop = worst_drop - trend_tolerance;
  if (shortfall >= excess_drop) {
    verdict.violation = shortfall;
    verdict.location = final_where;
    verdict.time = traj.snapshots.back().time;
  } else {
    verdict.violation = excess_drop;
  }
  finish(verdict);
  return verdict;
}

PropertyVerdict check_mass_neutral(const Field& u0, const RunConfig& config, double tolerance) {
  if (!is_linear(config.dispersal)) {
    throw Error(ErrorKind::NonlinearVariant, "mass neutrality is checked for linear dispersal only");
  }
  RunConfig cfg = unguarded(config);
  cfg.reaction = NoReaction{};
  const double mean0 = u0.mean();
  PropertyVerdict verdict = make_verdict("mass_neutral", tolerance);
  run(cfg, u0, [&](const Simulation& sim) {
    const double drift = std::abs(sim.field().mean() - mean0);
    if (drift > verdict.violation) {
      verdict.violation = drift;
      verdict.time = sim.time();
    }
  });
  finish(verdict);
  return verdict;
}

PropertyVerdict check_mass_neutral(const RunConfig& config, double tolerance) {
  return check_mass_neutral(initial_field(config), config, tolerance);
}

std::pair<Field, Field> random_ordered_gaussians(const Grid& grid, std::mt19937_64& rng) {
  const double reach = 0.1 * grid.half_length();
  std::uniform_real_distribution<double> amplitude(0.1, 0.9);
  std::uniform_real_distribution<double> center(-reach, reach);
  std::uniform_real_distribution<double> width(0.05 * reach, 0.5 * reach);
  const double a = amplitude(rng);
  const double c = center(rng);
  const double w = width(rng);
  const double b = amplitude(rng);
  const double c2 = center(rng);
  const double w2 = width(rng);
  Field lower = Field::from_function(grid, [&](double x) {
    const double s = (x - c) / w;
    return a * std::exp(-s * s);
  });
  Field upper = lower;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    const double s = (grid.node(i) - c2) / w2;
    upper[i] = std::min(1.0, lower[i] + b * std::exp(-s * s));
  }
  return {std::move(lower), std::move(upper)};
}

Field logistic_step_profile(const Grid& grid, double center, double width) {
  return Field::from_function(grid, [&](double x) { return 1.0 / (1.0 + std::exp((x - center) / width)); });
}

}  // namespace accelfront
