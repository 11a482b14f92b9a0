#include "accelfront/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 600.0;  // legend lives to the right of the plot area
constexpr double kTop = 40.0;
constexpr double kBottom = 440.0;

constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};
constexpr std::array<const char*, 4> kDashes{"", "8,4", "2,3", "8,3,2,3"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, double step) {
  char buf[32];
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  std::snprintf(buf, sizeof buf, "%.*f", decimals, std::abs(v) < 1e-12 * step ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

struct Axis {
  double lo;
  double hi;
  double step;
};

Axis make_axis(double lo, double hi) {
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double step = nice_step(hi - lo, 6);
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

Chart render_chart(std::span<const Series> series, const ChartStyle& style) {
  if (series.empty()) throw Error(ErrorKind::EmptySeries, "chart needs at least one series");
  Chart chart;
  std::vector<std::vector<std::pair<double, double>>> clean;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : series) {
    auto& pts = clean.emplace_back();
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        ++chart.dropped_points;
        continue;
      }
      pts.emplace_back(x, y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    if (pts.size() < 2) {
      throw Error(ErrorKind::EmptySeries, "series '" + s.name + "' has fewer than two finite points");
    }
  }
  const Axis ax = make_axis(xmin, xmax);
  const Axis ay = make_axis(ymin, ymax);
  const auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * (kRight - kLeft); };
  const auto py = [&](double y) { return kBottom - (y - ay.lo) / (ay.hi - ay.lo) * (kBottom - kTop); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    svg << "<text x=\"" << fmt((kLeft + kRight) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(style.title) << "</text>\n";
  }
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(kRight - kLeft)
      << "\" height=\"" << fmt(kBottom - kTop) << "\"/>\n</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const auto ticks = [](const Axis& a) {
    std::vector<double> out;
    const auto n = static_cast<long>(std::llround((a.hi - a.lo) / a.step));
    for (long i = 0; i <= n; ++i) out.push_back(a.lo + static_cast<double>(i) * a.step);
    return out;
  };
  for (double x : ticks(ax)) {
    const std::string sx = fmt(px(x));
    svg << "<line x1=\"" << sx << "\" y1=\"" << fmt(kBottom) << "\" x2=\"" << sx << "\" y2=\""
        << fmt(kBottom + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << sx << "\" y=\"" << fmt(kBottom + 18) << "\" text-anchor=\"middle\">"
        << tick_label(x, ax.step) << "</text>\n";
  }
  for (double y : ticks(ay)) {
    const std::string sy = fmt(py(y));
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << sy << "\" x2=\"" << fmt(kLeft)
        << "\" y2=\"" << sy << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py(y) + 4)
        << "\" text-anchor=\"end\">" << tick_label(y, ay.step) << "</text>\n";
  }
  svg << "<text x=\"" << fmt((kLeft + kRight) / 2) << "\" y=\"" << fmt(kBottom + 40)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(style.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << fmt((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << fmt((kTop + kBottom) / 2) << ")\">" << escape(style.y_label) << "</text>\n</g>\n";

  for (std::size_t s = 0; s < clean.size(); ++s) {
    const char* color = kColors[s % kColors.size()];
    const char* dash = kDashes[(s / kColors.size()) % kDashes.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (*dash) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < clean[s].size(); ++i) {
      svg << (i ? " " : "") << fmt(px(clean[s][i].first)) << ',' << fmt(py(clean[s][i].second));
    }
    svg << "\"/>\n";
  }

  if (style.legend) {
    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    const double row_height = std::min(18.0, (kBottom - kTop) / static_cast<double>(series.size()));
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double y = kTop + 8 + row_height * static_cast<double>(s);
      const char* color = kColors[s % kColors.size()];
      const char* dash = kDashes[(s / kColors.size()) % kDashes.size()];
      svg << "<line x1=\"" << fmt(kRight + 15) << "\" y1=\"" << fmt(y) << "\" x2=\""
          << fmt(kRight + 45) << "\" y2=\"" << fmt(y) << "\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"";
      if (*dash) svg << " stroke-dasharray=\"" << dash << "\"";
      svg << "/>\n<text x=\"" << fmt(kRight + 52) << "\" y=\"" << fmt(y + 4) << "\">"
          << escape(series[s].name) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  chart.svg = svg.str();
  return chart;
}

std::size_t emit_chart(const std::filesystem::path& path, std::span<const Series> series,
                       const ChartStyle& style) {
  const Chart chart = render_chart(series, style);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
  out << chart.svg;
  if (!out) throw Error(ErrorKind::IoFailure, "failed writing " + path.string());
  return chart.dropped_points;
}

}  // namespace accelfront
