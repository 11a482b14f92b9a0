#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "accelfront/config.hpp"
#include "accelfront/diagnostics.hpp"
#include "accelfront/integrator.hpp"

namespace accelfront {

/// Figure-reproduction presets: fig1a, fig1b, fig1c, fig1d, fig2.
struct PresetRun {
  std::string label;
  RunConfig config;
};

struct Preset {
  std::string name;
  std::vector<PresetRun> runs;
};

std::vector<std::string> preset_names();
/// Throws Error(UnknownPreset).
Preset make_preset(std::string_view name);

/// Single-run configurations behind the presets. fig1a uses the reduced
/// horizon t_end = 12 on L = 5000, N = 2^17; the others run to t = 20.
RunConfig fig1a_config();
RunConfig fig1b_config();
RunConfig fig1c_config();
RunConfig fig1d_config();

struct RunOutput {
  std::string label;
  Trajectory trajectory;
  DiagnosticsReport report;
  std::vector<std::filesystem::path> files;
};

/// Runs one configuration, requires a clean guard (GuardBreachedError
/// otherwise), and writes `<label>_trajectory.dat`, `<label>_diagnostics.csv`,
/// `<label>_speeds.csv` and, when requested, `<label>_profiles.svg` and
/// `<label>_stretching.svg` into `directory`.
RunOutput run_and_emit(const RunConfig& config, const std::string& label,
                       const std::filesystem::path& directory, bool write_trajectory = true,
                       bool write_charts = true);

/// Runs every configuration of a preset. fig2 additionally writes
/// `fig2_stretching.svg` with the four x_0.4 - x_0.6 series.
std::vector<RunOutput> run_preset(std::string_view name, const std::filesystem::path& directory);

struct SweepEntry {
  std::string value;
  bool ok = false;
  std::string error;
  RunOutput output;
};

/// Runs the config once per value of `key`, concurrently (at most `workers`
/// runs at a time), each into `directory/<key>=<value>/`, and writes
/// `directory/sweep_summary.csv`.
std::vector<SweepEntry> run_sweep(std::string_view config_text, std::string_view key,
                                  const std::vector<std::string>& values,
                                  const std::filesystem::path& directory,
                                  const std::filesystem::path& base_dir = {},
                                  unsigned workers = 0);

}  // namespace accelfront
