#pragma once

#include <span>
#include <utility>
#include <vector>

#include "accelfront/grid.hpp"

namespace accelfront {

struct Snapshot {
  double time = 0.0;
  Field field;
};

/// A level-set position: finite, or one of the two sentinels.
class Position {
 public:
  enum class Kind { MinusInfinity, Finite, PlusInfinity };

  static Position finite(double x) noexcept { return {Kind::Finite, x}; }
  static Position minus_infinity() noexcept { return {Kind::MinusInfinity, 0.0}; }
  static Position plus_infinity() noexcept { return {Kind::PlusInfinity, 0.0}; }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// Signed infinity for the sentinels.
  double value() const noexcept;

  friend bool operator==(const Position&, const Position&) = default;
  /// Orders -inf < finite < +inf, finite positions by value.
  friend bool operator<(const Position& a, const Position& b) noexcept;

 private:
  Position(Kind kind, double x) noexcept : kind_(kind), x_(x) {}
  Kind kind_;
  double x_;
};

struct RangeBounds {
  double min = 0.0;
  double max = 0.0;
};

RangeBounds range_bounds(const Field& field) noexcept;

/// x_lambda = inf{x : u < lambda on (x, L)} from the running maximum taken
/// from the right end, linearly interpolated. +inf if lambda <= min u,
/// -inf if lambda > max u. Throws Error(LambdaOutOfRange).
Position level_position(const Field& field, double lambda);

/// x_a - x_b for 0 < a < b < 1. Throws Error(InfinitePosition).
double stretching(const Field& field, double a, double b);

struct InterfaceBand {
  double lower_edge = 0.0;  ///< where the running min from the peak leaves [upper, 1]
  double upper_edge = 0.0;  ///< where the running max from the right drops to <= lower
  double width() const noexcept { return upper_edge - lower_edge; }
};

inline constexpr double kWidthUpperLevel = 2.0 / 3.0;
inline constexpr double kWidthLowerLevel = 1.0 / 3.0;

/// Transition band between the levels `upper` (default 2/3) and `lower` (1/3).
/// The running minimum starts at the first node where u attains its maximum,
/// so Gaussian-started profiles measure their right-moving interface.
/// Throws Error(ThresholdsNotSpanned).
InterfaceBand interface_band(const Field& field, double upper = kWidthUpperLevel,
                             double lower = kWidthLowerLevel);
double interface_width(const Field& field, double upper = kWidthUpperLevel,
                       double lower = kWidthLowerLevel);

struct Flatness {
  double left = 0.0;
  double right = 0.0;
};

/// Max |u - lambda| over nodes in [x_lambda - R, x_lambda] and [x_lambda, x_lambda + R].
/// Throws Error(InfinitePosition) or Error(WindowOutOfDomain).
Flatness flatness(const Field& field, double lambda, double radius);

struct LevelTrace {
  double level = 0.5;
  std::vector<std::pair<double, Position>> points;  ///< (t, x_level(t)), t increasing
};

/// Least-squares slope of the finite points with t in [t_begin, t_end].
/// Throws Error(InsufficientPoints) with fewer than three.
double speed_fit(const LevelTrace& trace, double t_begin, double t_end);

struct DiagnosticsPlan {
  std::vector<double> levels{0.4, 0.5, 0.6};
  std::vector<std::pair<double, double>> stretch_pairs{{0.4, 0.6}};
  double width_upper = kWidthUpperLevel;
  double width_lower = kWidthLowerLevel;
  double flat_level = 0.5;
  double flat_radius = 5.0;
  /// Time windows for speed fits of every tracked level.
  std::vector<std::pair<double, double>> speed_windows;
};

/// Observables of one snapshot. Quantities that are undefined for the
/// snapshot (sentinel positions, thresholds not spanned) are NaN.
struct SnapshotDiagnostics {
  double time = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<Position> levels;
  std::vector<double> stretch;
  double width = 0.0;
  double flat_left = 0.0;
  double flat_right = 0.0;
};

struct SpeedEstimate {
  double level = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  double speed = 0.0;  ///< NaN when the window has too few finite points
};

struct DiagnosticsReport {
  DiagnosticsPlan plan;
  std::vector<SnapshotDiagnostics> rows;
  std::vector<SpeedEstimate> speeds;

  /// Trace of plan.levels[index] over all rows.
  LevelTrace trace(std::size_t level_index) const;
  /// Stretching series for plan.stretch_pairs[index] (NaN rows dropped).
  std::vector<std::pair<double, double>> stretch_series(std::size_t pair_index) const;
};

SnapshotDiagnostics analyze_snapshot(const Snapshot& snapshot, const DiagnosticsPlan& plan);
DiagnosticsReport analyze(std::span<const Snapshot> snapshots, const DiagnosticsPlan& plan);

}  // namespace accelfront
