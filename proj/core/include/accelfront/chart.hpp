#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace accelfront {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct ChartStyle {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "u";
  bool legend = true;
};

struct Chart {
  std::string svg;
  /// Non-finite points (e.g. sentinel positions) removed before plotting.
  std::size_t dropped_points = 0;
};

/// Self-contained SVG 1.1 line chart on a fixed 800x500 viewBox: linear axes
/// with tick labels, one polyline per series, legend by series name.
/// Output is byte-identical for identical input. Throws Error(EmptySeries)
/// when there are no series or a series keeps fewer than two finite points.
Chart render_chart(std::span<const Series> series, const ChartStyle& style);

/// Writes render_chart output; returns the dropped-point count.
std::size_t emit_chart(const std::filesystem::path& path, std::span<const Series> series,
                       const ChartStyle& style);

}  // namespace accelfront
