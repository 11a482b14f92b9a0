// accelfront: run reaction-dispersal experiments, figure presets, property
// checks and parameter sweeps from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "accelfront/config.hpp"
#include "accelfront/error.hpp"
#include "accelfront/experiment.hpp"
#include "accelfront/properties.hpp"

namespace af = accelfront;

namespace {

constexpr int kExitError = 1;
constexpr int kExitPropertyFailed = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw af::Error(af::ErrorKind::IoFailure, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void report_outputs(const std::vector<af::RunOutput>& outputs) {
  for (const auto& o : outputs) {
    std::cout << o.label << ": " << o.trajectory.snapshots.size() << " snapshots, "
              << o.trajectory.steps << " steps, max overshoot " << o.trajectory.max_overshoot
              << ", guard peak " << o.trajectory.guard.peak << '\n';
    for (const auto& f : o.files) std::cout << "  wrote " << f.string() << '\n';
  }
}

int properties(const std::string& config_path, std::uint64_t seed, int pairs, double speed) {
  const af::ExperimentConfig cfg = af::load_config(config_path);
  const af::RunConfig& run = cfg.run;
  const af::Grid grid = run.grid();
  std::mt19937_64 rng(seed);
  std::vector<af::PropertyVerdict> verdicts;

  af::PropertyVerdict worst{"comparison", true, 0.0, 1e-9, 0.0, 0.0};
  for (int p = 0; p < pairs; ++p) {
    const auto [u0, v0] = af::random_ordered_gaussians(grid, rng);
    const auto v = af::check_comparison(u0, v0, run);
    if (p == 0 || v.violation > worst.violation) worst = v;
  }
  worst.pass = worst.violation <= worst.tolerance;
  if (pairs > 0) verdicts.push_back(worst);

  const af::Field step = std::holds_alternative<af::IndicatorInitial>(run.initial)
                             ? af::initial_field(run)
                             : af::logistic_step_profile(grid, 0.0, 2.0);
  verdicts.push_back(af::check_monotone_preservation(step, run));

  if (af::is_linear(run.dispersal)) verdicts.push_back(af::check_mass_neutral(run));
  if (speed > 0.0) verdicts.push_back(af::check_spreading(af::initial_field(run), speed, run));

  bool all = true;
  for (const auto& v : verdicts) {
    std::cout << af::format_verdict(v) << '\n';
    all = all && v.pass;
  }
  return all ? 0 : kExitPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reaction-dispersal front simulator and diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized property-test inputs")->capture_default_str();

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one configuration file");
  run_cmd->add_option("config", config_path, "Config document")->required()->check(CLI::ExistingFile);

  std::string preset_name;
  auto* preset_cmd = app.add_subcommand("preset", "Run a figure preset (fig1a..fig1d, fig2)");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();

  int pairs = 5;
  double speed = 0.0;
  auto* props_cmd = app.add_subcommand("properties", "Check comparison, monotonicity, mass and spreading");
  props_cmd->add_option("config", config_path, "Config document")->required()->check(CLI::ExistingFile);
  props_cmd->add_option("--pairs", pairs, "Random ordered pairs for the comparison check")
      ->capture_default_str();
  props_cmd->add_option("--speed", speed, "Also check spreading at this speed (> 0)");

  std::string vary;
  unsigned workers = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a config once per value of one key");
  sweep_cmd->add_option("config", config_path, "Config document")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--vary", vary, "key=v1,v2,...")->required();
  sweep_cmd->add_option("--workers", workers, "Concurrent runs (0 = hardware threads)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const af::ExperimentConfig cfg = af::load_config(config_path);
      const auto dir = app.get_option("--out")->count() ? std::filesystem::path(out_dir)
                                                         : cfg.output.directory;
      report_outputs({af::run_and_emit(cfg.run, cfg.output.name, dir, cfg.output.write_trajectory,
                                       cfg.output.write_charts)});
      return 0;
    }
    if (*preset_cmd) {
      report_outputs(af::run_preset(preset_name, out_dir));
      return 0;
    }
    if (*props_cmd) return properties(config_path, seed, pairs, speed);
    if (*sweep_cmd) {
      const auto eq = vary.find('=');
      if (eq == std::string::npos) {
        throw af::Error(af::ErrorKind::ParseError, "--vary expects key=v1,v2,...");
      }
      const std::string key = vary.substr(0, eq);
      std::vector<std::string> values;
      std::istringstream list(vary.substr(eq + 1));
      for (std::string v; std::getline(list, v, ',');) values.push_back(v);
      const auto entries = af::run_sweep(read_file(config_path), key, values, out_dir,
                                         std::filesystem::path(config_path).parent_path(), workers);
      int failures = 0;
      for (const auto& e : entries) {
        std::cout << key << '=' << e.value << ": " << (e.ok ? "ok" : e.error) << '\n';
        failures += e.ok ? 0 : 1;
      }
      std::cout << "wrote " << (std::filesystem::path(out_dir) / "sweep_summary.csv").string() << '\n';
      return failures == 0 ? 0 : kExitError;
    }
  } catch (const af::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: IoFailure: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
