#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "accelfront/diagnostics.hpp"

namespace accelfront {

/// Column names for a plan, e.g. t,m,M,x_0.4,x_0.5,x_0.6,stretch_0.4_0.6,width,flat_left,flat_right.
std::vector<std::string> csv_header(const DiagnosticsPlan& plan);

/// One row per snapshot, 17 significant digits; sentinel positions are
/// written as -inf/+inf and undefined values as nan.
void emit_csv(std::ostream& out, const DiagnosticsReport& report);
void emit_csv(const std::filesystem::path& path, const DiagnosticsReport& report);

/// Reads a file written by emit_csv. Levels and stretch pairs are recovered
/// from the header; speed estimates are not part of the format.
DiagnosticsReport parse_csv(std::istream& in);

/// Fitted speeds as `level,t_begin,t_end,speed` rows.
void emit_speeds_csv(std::ostream& out, const DiagnosticsReport& report);

}  // namespace accelfront
