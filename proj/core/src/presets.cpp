#include "accelfront/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "accelfront/chart.hpp"
#include "accelfront/error.hpp"
#include "accelfront/report_io.hpp"

namespace accelfront {
namespace {

RunConfig caption_defaults() {
  RunConfig c;
  c.initial = GaussianInitial{1.0, 10.0};  // exp(-x^2/100)
  c.reaction = KppLogistic{};
  c.dt = 0.01;
  c.t_end = 20.0;
  c.diagnostics.speed_windows = {{5.0, 10.0}, {15.0, 20.0}};
  return c;
}

std::vector<double> every(double step, double t_end) {
  std::vector<double> out;
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * step;
    if (t > t_end + 1e-12) break;
    out.push_back(t);
  }
  return out;
}

std::vector<Series> profile_series(const Trajectory& traj) {
  // Crop to where the solution lives: up to the furthest point with u >= 0.01.
  double reach = 50.0;
  for (const auto& snap : traj.snapshots) {
    for (std::size_t i = snap.field.size(); i-- > 0;) {
      if (snap.field[i] >= 0.01) {
        reach = std::max(reach, snap.field.grid().node(i));
        break;
      }
    }
  }
  reach *= 1.1;
  const double left = -0.1 * reach;
  std::vector<Series> out;
  for (const auto& snap : traj.snapshots) {
    if (std::abs(snap.time - std::round(snap.time)) > 1e-9) continue;
    const Grid& g = snap.field.grid();
    const std::size_t first = g.nearest_index(left);
    const std::size_t last = g.nearest_index(reach);
    const std::size_t stride = std::max<std::size_t>(1, (last - first) / 1500);
    Series s;
    std::ostringstream name;
    name << "t=" << snap.time;
    s.name = name.str();
    for (std::size_t i = first; i <= last; i += stride) s.points.emplace_back(g.node(i), snap.field[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string pair_name(const std::pair<double, double>& p) {
  std::ostringstream os;
  os << "x_" << p.first << " - x_" << p.second;
  return os.str();
}

}  // namespace

RunConfig fig1a_config() {
  RunConfig c = caption_defaults();
  c.dispersal = FractionalLaplacian{0.9};
  c.half_length = 5000.0;
  c.n_points = std::size_t{1} << 17;
  c.t_end = 12.0;
  c.diagnostics.speed_windows = {{3.0, 6.0}, {9.0, 12.0}};
  return c;
}

RunConfig fig1b_config() {
  RunConfig c = caption_defaults();
  c.dispersal = Convolution{KernelSpec{StretchedExponentialKernel{0.5, 1.0}, true}};
  c.half_length = 2000.0;
  c.n_points = std::size_t{1} << 15;
  return c;
}

RunConfig fig1c_config() {
  RunConfig c = caption_defaults();
  c.dispersal = FastDiffusion{0.5};
  c.half_length = 2000.0;
  c.n_points = std::size_t{1} << 14;
  return c;
}

RunConfig fig1d_config() {
  RunConfig c = caption_defaults();
  c.dispersal = StandardLaplacian{};
  c.half_length = 400.0;
  c.n_points = std::size_t{1} << 13;
  return c;
}

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig1c", "fig1d", "fig2"}; }

Preset make_preset(std::string_view name) {
  if (name == "fig1a") return {"fig1a", {{"fig1a", fig1a_config()}}};
  if (name == "fig1b") return {"fig1b", {{"fig1b", fig1b_config()}}};
  if (name == "fig1c") return {"fig1c", {{"fig1c", fig1c_config()}}};
  if (name == "fig1d") return {"fig1d", {{"fig1d", fig1d_config()}}};
  if (name == "fig2") {
    Preset p{"fig2", {{"fig2_fractional", fig1a_config()},
                      {"fig2_convolution", fig1b_config()},
                      {"fig2_fast_diffusion", fig1c_config()},
                      {"fig2_standard", fig1d_config()}}};
    for (auto& run : p.runs) {
      run.config.snapshot_times = every(0.5, run.config.t_end);
      run.config.diagnostics.levels = {0.4, 0.6};
      run.config.diagnostics.stretch_pairs = {{0.4, 0.6}};
    }
    return p;
  }
  throw Error(ErrorKind::UnknownPreset, "unknown preset '" + std::string(name) +
                                            "' (expected fig1a, fig1b, fig1c, fig1d or fig2)");
}

RunOutput run_and_emit(const RunConfig& config, const std::string& label,
                       const std::filesystem::path& directory, bool write_trajectory,
                       bool write_charts) {
  RunOutput out;
  out.label = label;
  out.trajectory = run(config);
  require_clean_guard(out.trajectory);
  out.report = analyze(out.trajectory.snapshots, config.diagnostics);

  std::filesystem::create_directories(directory);
  if (write_trajectory) {
    const auto path = directory / (label + "_trajectory.dat");
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
    accelfront::write_trajectory(f, out.trajectory);
    out.files.push_back(path);
  }
  {
    const auto path = directory / (label + "_diagnostics.csv");
    emit_csv(path, out.report);
    out.files.push_back(path);
  }
  {
    const auto path = directory / (label + "_speeds.csv");
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
    emit_speeds_csv(f, out.report);
    out.files.push_back(path);
  }
  if (write_charts) {
    const auto profiles = profile_series(out.trajectory);
    if (!profiles.empty()) {
      const auto path = directory / (label + "_profiles.svg");
      emit_chart(path, profiles, {label + ": " + describe(config.dispersal), "x", "u", true});
      out.files.push_back(path);
    }
    std::vector<Series> stretch;
    for (std::size_t i = 0; i < config.diagnostics.stretch_pairs.size(); ++i) {
      Series s{pair_name(config.diagnostics.stretch_pairs[i]), out.report.stretch_series(i)};
      if (s.points.size() >= 2) stretch.push_back(std::move(s));
    }
    if (!stretch.empty()) {
      const auto path = directory / (label + "_stretching.svg");
      emit_chart(path, stretch, {label + ": stretching", "t", "distance", true});
      out.files.push_back(path);
    }
  }
  return out;
}

std::vector<RunOutput> run_preset(std::string_view name, const std::filesystem::path& directory) {
  const Preset preset = make_preset(name);
  std::vector<RunOutput> outputs;
  for (const auto& run : preset.runs) {
    outputs.push_back(run_and_emit(run.config, run.label, directory, true, true));
  }
  if (preset.name == "fig2") {
    std::vector<Series> series;
    for (const auto& o : outputs) series.push_back({o.label.substr(5), o.report.stretch_series(0)});
    const auto path = directory / "fig2_stretching.svg";
    emit_chart(path, series, {"x_0.4(t) - x_0.6(t)", "t", "distance", true});
    outputs.back().files.push_back(path);
  }
  return outputs;
}

std::vector<SweepEntry> run_sweep(std::string_view config_text, std::string_view key,
                                  const std::vector<std::string>& values,
                                  const std::filesystem::path& directory,
                                  const std::filesystem::path& base_dir, unsigned workers) {
  std::vector<SweepEntry> entries(values.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepEntry& e = entries[i];
      e.value = values[i];
      try {
        const ExperimentConfig cfg =
            parse_config(override_key(config_text, key, values[i]), base_dir);
        const auto dir = directory / (std::string(key) + "=" + values[i]);
        e.output = run_and_emit(cfg.run, cfg.output.name, dir, cfg.output.write_trajectory,
                                cfg.output.write_charts);
        e.ok = true;
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, values.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::filesystem::create_directories(directory);
  const auto path = directory / "sweep_summary.csv";
  std::ofstream summary(path);
  if (!summary) throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
  summary << std::setprecision(17) << "value,status,guard_breached,final_t,final_x_mid\n";
  for (const auto& e : entries) {
    summary << e.value << ',' << (e.ok ? "ok" : "error") << ',';
    if (e.ok && !e.output.report.rows.empty()) {
      const auto& row = e.output.report.rows.back();
      const auto& levels = row.levels;
      const double mid = levels.empty() ? std::nan("") : levels[levels.size() / 2].value();
      summary << (e.output.trajectory.guard.breached ? 1 : 0) << ',' << row.time << ',' << mid;
    } else {
      summary << ",,";
    }
    summary << '\n';
  }
  return entries;
}

}  // namespace accelfront
