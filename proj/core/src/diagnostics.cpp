#include "accelfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_level(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "level " << lambda << " is outside (0, 1)";
    throw Error(ErrorKind::LambdaOutOfRange, os.str());
  }
}

}  // namespace

double Position::value() const noexcept {
  switch (kind_) {
    case Kind::MinusInfinity: return -std::numeric_limits<double>::infinity();
    case Kind::PlusInfinity: return std::numeric_limits<double>::infinity();
    case Kind::Finite: break;
  }
  return x_;
}

bool operator<(const Position& a, const Position& b) noexcept {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
  return a.kind_ == Position::Kind::Finite && a.x_ < b.x_;
}

RangeBounds range_bounds(const Field& field) noexcept {
  const auto [lo, hi] = std::minmax_element(field.values().begin(), field.values().end());
  return {*lo, *hi};
}

Position level_position(const Field& field, double lambda) {
  check_level(lambda);
  const auto bounds = range_bounds(field);
  if (lambda <= bounds.min) return Position::plus_infinity();
  if (lambda > bounds.max) return Position::minus_infinity();

  const Grid& grid = field.grid();
  const std::size_t n = field.size();
  double right_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = n; i-- > 0;) {
    if (field[i] >= lambda) {
      if (i == n - 1) return Position::finite(grid.node(i));
      const double frac = (field[i] - lambda) / (field[i] - right_max);
      return Position::finite(grid.node(i) + frac * grid.dx());
    }
    right_max = std::max(right_max, field[i]);
  }
  return Position::minus_infinity();  // unreachable: lambda <= max
}

double stretching(const Field& field, double a, double b) {
  if (!(a < b)) {
    throw Error(ErrorKind::LambdaOutOfRange, "stretching needs a < b");
  }
  const Position xa = level_position(field, a);
  const Position xb = level_position(field, b);
  if (!xa.is_finite() || !xb.is_finite()) {
    throw Error(ErrorKind::InfinitePosition, "stretching needs finite level positions");
  }
  return xa.value() - xb.value();
}

InterfaceBand interface_band(const Field& field, double upper, double lower) {
  if (!(lower < upper)) throw Error(ErrorKind::LambdaOutOfRange, "need lower < upper level");
  const std::size_t n = field.size();
  const Grid& grid = field.grid();
  const auto values = field.values();
  const auto peak = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  if (field[peak] < upper) {
    throw Error(ErrorKind::ThresholdsNotSpanned, "field never reaches the upper level");
  }

  // Lower edge: running min from the peak to the right.
  std::size_t q = peak;
  while (q + 1 < n && field[q + 1] >= upper) ++q;
  if (q + 1 == n) {
    throw Error(ErrorKind::ThresholdsNotSpanned, "field never drops below the upper level");
  }
  InterfaceBand band;
  band.lower_edge = grid.node(q) + grid.dx() * (field[q] - upper) / (field[q] - field[q + 1]);

  // Upper edge: running max from the right end.
  if (field[n - 1] > lower) {
    throw Error(ErrorKind::ThresholdsNotSpanned, "field does not fall to the lower level");
  }
  double right_max = field[n - 1];
  std::size_t r = n - 1;
  while (r > 0 && std::max(right_max, field[r - 1]) <= lower) {
    --r;
    right_max = std::max(right_max, field[r]);
  }
  if (r == 0) throw Error(ErrorKind::ThresholdsNotSpanned, "field never exceeds the lower level");
  band.upper_edge =
      grid.node(r - 1) + grid.dx() * (field[r - 1] - lower) / (field[r - 1] - right_max);
  return band;
}

double interface_width(const Field& field, double upper, double lower) {
  return interface_band(field, upper, lower).width();
}

Flatness flatness(const Field& field, double lambda, double radius) {
  const Position x = level_position(field, lambda);
  if (!x.is_finite()) throw Error(ErrorKind::InfinitePosition, "level position is a sentinel");
  const Grid& grid = field.grid();
  const double left_end = x.value() - radius;
  const double right_end = x.value() + radius;
  if (left_end < grid.node(0) || right_end > grid.node(grid.size() - 1)) {
    throw Error(ErrorKind::WindowOutOfDomain, "flatness window leaves the domain");
  }
  Flatness out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double xi = grid.node(i);
    const double dev = std::abs(field[i] - lambda);
    if (xi >= left_end && xi <= x.value()) out.left = std::max(out.left, dev);
    if (xi >= x.value() && xi <= right_end) out.right = std::max(out.right, dev);
  }
  return out;
}

double speed_fit(const LevelTrace& trace, double t_begin, double t_end) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, pos] : trace.points) {
    if (t >= t_begin && t <= t_end && pos.is_finite()) pts.emplace_back(t, pos.value());
  }
  if (pts.size() < 3) {
    throw Error(ErrorKind::InsufficientPoints, "speed fit needs at least 3 finite points");
  }
  double t_mean = 0.0;
  double x_mean = 0.0;
  for (const auto& [t, x] : pts) {
    t_mean += t;
    x_mean += x;
  }
  t_mean /= static_cast<double>(pts.size());
  x_mean /= static_cast<double>(pts.size());
  double num = 0.0;
  double den = 0.0;
  for (const auto& [t, x] : pts) {
    num += (t - t_mean) * (x - x_mean);
    den += (t - t_mean) * (t - t_mean);
  }
  return num / den;
}

LevelTrace DiagnosticsReport::trace(std::size_t level_index) const {
  LevelTrace out{plan.levels.at(level_index), {}};
  for (const auto& row : rows) out.points.emplace_back(row.time, row.levels.at(level_index));
  return out;
}

std::vector<std::pair<double, double>> DiagnosticsReport::stretch_series(
    std::size_t pair_index) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& row : rows) {
    const double s = row.stretch.at(pair_index);
    if (!std::isnan(s)) out.emplace_back(row.time, s);
  }
  return out;
}

SnapshotDiagnostics analyze_snapshot(const Snapshot& snapshot, const DiagnosticsPlan& plan) {
  const Field& u = snapshot.field;
  SnapshotDiagnostics row;
  row.time = snapshot.time;
  const auto bounds = range_bounds(u);
  row.min = bounds.min;
  row.max = bounds.max;
  for (double lambda : plan.levels) row.levels.push_back(level_position(u, lambda));
  for (const auto& [a, b] : plan.stretch_pairs) {
    const Position xa = level_position(u, a);
    const Position xb = level_position(u, b);
    row.stretch.push_back(xa.is_finite() && xb.is_finite() ? xa.value() - xb.value() : kNaN);
  }
  try {
    row.width = interface_width(u, plan.width_upper, plan.width_lower);
  } catch (const Error&) {
    row.width = kNaN;
  }
  try {
    const Flatness flat = flatness(u, plan.flat_level, plan.flat_radius);
    row.flat_left = flat.left;
    row.flat_right = flat.right;
  } catch (const Error&) {
    row.flat_left = kNaN;
    row.flat_right = kNaN;
  }
  return row;
}

DiagnosticsReport analyze(std::span<const Snapshot> snapshots, const DiagnosticsPlan& plan) {
  DiagnosticsReport report;
  report.plan = plan;
  for (const auto& snap : snapshots) report.rows.push_back(analyze_snapshot(snap, plan));
  for (std::size_t i = 0; i < plan.levels.size(); ++i) {
    const LevelTrace tr = report.trace(i);
    for (const auto& [t0, t1] : plan.speed_windows) {
      SpeedEstimate est{plan.levels[i], t0, t1, kNaN};
      try {
        est.speed = speed_fit(tr, t0, t1);
      } catch (const Error&) {
      }
      report.speeds.push_back(est);
    }
  }
  return report;
}

}  // namespace accelfront
