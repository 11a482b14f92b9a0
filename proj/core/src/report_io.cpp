#include "accelfront/report_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

std::string level_label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void write_value(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
  } else if (std::isinf(v)) {
    out << (v > 0 ? "+inf" : "-inf");
  } else {
    out << std::setprecision(17) << v;
  }
}

double read_value(const std::string& cell) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (cell == "+inf" || cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::ParseError, "bad CSV cell '" + cell + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Position to_position(double v) {
  if (std::isinf(v)) return v > 0 ? Position::plus_infinity() : Position::minus_infinity();
  return Position::finite(v);
}

}  // namespace

std::vector<std::string> csv_header(const DiagnosticsPlan& plan) {
  std::vector<std::string> cols{"t", "m", "M"};
  for (double lambda : plan.levels) cols.push_back("x_" + level_label(lambda));
  for (const auto& [a, b] : plan.stretch_pairs) {
    cols.push_back("stretch_" + level_label(a) + "_" + level_label(b));
  }
  cols.insert(cols.end(), {"width", "flat_left", "flat_right"});
  return cols;
}

void emit_csv(std::ostream& out, const DiagnosticsReport& report) {
  const auto header = csv_header(report.plan);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : report.rows) {
    write_value(out, row.time);
    out << ',';
    write_value(out, row.min);
    out << ',';
    write_value(out, row.max);
    for (const auto& p : row.levels) {
      out << ',';
      write_value(out, p.value());
    }
    for (double s : row.stretch) {
      out << ',';
      write_value(out, s);
    }
    for (double v : {row.width, row.flat_left, row.flat_right}) {
      out << ',';
      write_value(out, v);
    }
    out << '\n';
  }
}

void emit_csv(const std::filesystem::path& path, const DiagnosticsReport& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
  emit_csv(out, report);
  if (!out) throw Error(ErrorKind::IoFailure, "failed writing " + path.string());
}

DiagnosticsReport parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "missing CSV header");
  const auto header = split_csv(line);
  DiagnosticsReport report;
  report.plan.levels.clear();
  report.plan.stretch_pairs.clear();
  if (header.size() < 6 || header[0] != "t" || header[1] != "m" || header[2] != "M") {
    throw Error(ErrorKind::ParseError, "unexpected CSV header");
  }
  std::size_t col = 3;
  for (; col < header.size() && header[col].rfind("x_", 0) == 0; ++col) {
    report.plan.levels.push_back(read_value(header[col].substr(2)));
  }
  for (; col < header.size() && header[col].rfind("stretch_", 0) == 0; ++col) {
    const std::string body = header[col].substr(8);
    const auto us = body.find('_');
    if (us == std::string::npos) throw Error(ErrorKind::ParseError, "bad stretch column");
    report.plan.stretch_pairs.emplace_back(read_value(body.substr(0, us)),
                                           read_value(body.substr(us + 1)));
  }
  if (header.size() != col + 3 || header[col] != "width" || header[col + 1] != "flat_left" ||
      header[col + 2] != "flat_right") {
    throw Error(ErrorKind::ParseError, "unexpected trailing CSV columns");
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::ParseError, "CSV row has " + std::to_string(cells.size()) +
                                             " cells, header has " + std::to_string(header.size()));
    }
    SnapshotDiagnostics row;
    std::size_t c = 0;
    row.time = read_value(cells[c++]);
    row.min = read_value(cells[c++]);
    row.max = read_value(cells[c++]);
    for (std::size_t i = 0; i < report.plan.levels.size(); ++i) {
      row.levels.push_back(to_position(read_value(cells[c++])));
    }
    for (std::size_t i = 0; i < report.plan.stretch_pairs.size(); ++i) {
      row.stretch.push_back(read_value(cells[c++]));
    }
    row.width = read_value(cells[c++]);
    row.flat_left = read_value(cells[c++]);
    row.flat_right = read_value(cells[c++]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

void emit_speeds_csv(std::ostream& out, const DiagnosticsReport& report) {
  out << "level,t_begin,t_end,speed\n";
  for (const auto& s : report.speeds) {
    write_value(out, s.level);
    out << ',';
    write_value(out, s.t_begin);
    out << ',';
    write_value(out, s.t_end);
    out << ',';
    write_value(out, s.speed);
    out << '\n';
  }
}

}  // namespace accelfront
