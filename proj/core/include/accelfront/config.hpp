#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "accelfront/integrator.hpp"

namespace accelfront {

struct OutputOptions {
  std::filesystem::path directory = "out";
  std::string name = "run";
  bool write_trajectory = true;
  bool write_charts = true;
};

struct ExperimentConfig {
  RunConfig run;
  OutputOptions output;
};

/// Parses a flat `section.key = value` document ('#' comments, blank lines
/// ignored). Sections: grid, dispersal, reaction, time, initial, diagnostics,
/// output. Only dispersal.variant is required. Relative file paths (kernel and
/// initial tables) resolve against `base_dir`.
///
/// Throws UnknownKey, MissingRequired, ParseError, or ValidationFailed.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Replaces (or appends) one `key = value` line of a config document.
std::string override_key(std::string_view text, std::string_view key, std::string_view value);

}  // namespace accelfront
