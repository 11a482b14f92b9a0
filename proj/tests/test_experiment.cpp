#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "accelfront/chart.hpp"
#include "accelfront/config.hpp"
#include "accelfront/error.hpp"
#include "accelfront/experiment.hpp"
#include "accelfront/report_io.hpp"

using namespace accelfront;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no accelfront::Error thrown");
  return ErrorKind::ParseError;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(ACCELFRONT_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kMinimal =
    "dispersal.variant=standard_laplacian\n"
    "grid.L=400\n"
    "grid.N=8192\n"
    "time.t_end=20\n";

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const ExperimentConfig e = parse_config(kMinimal);
  const RunConfig& c = e.run;
  CHECK(std::holds_alternative<StandardLaplacian>(c.dispersal));
  CHECK(std::holds_alternative<KppLogistic>(c.reaction));
  CHECK(c.half_length == 400.0);
  CHECK(c.n_points == 8192);
  CHECK(c.t_end == 20.0);
  CHECK(c.dt == 0.01);
  CHECK(c.guard_threshold == 1e-4);
  CHECK(c.diagnostics.levels == std::vector<double>{0.4, 0.5, 0.6});
  const auto* g = std::get_if<GaussianInitial>(&c.initial);
  REQUIRE(g);
  CHECK(g->width == 10.0);
}

TEST_CASE("config errors") {
  CHECK(kind_of([] { parse_config("dispersal.variant=fractional_laplacian\ndispersal.alpha=1.5\n"); }) ==
        ErrorKind::ValidationFailed);
  CHECK(kind_of([] { parse_config("dispersal.variant=standard_laplacian\ngrid.width=3\n"); }) ==
        ErrorKind::UnknownKey);
  CHECK(kind_of([] { parse_config("grid.L=10\n"); }) == ErrorKind::MissingRequired);
  CHECK(kind_of([] { parse_config("dispersal.variant=standard_laplacian\ngrid.N=abc\n"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_config("just words\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_config("dispersal.variant=standard_laplacian\nreaction.variant=polynomial\n"
                                  "reaction.coefficients=0,1,-1.1\n"); }) == ErrorKind::ValidationFailed);
  CHECK(kind_of([] { load_config("/nonexistent/run.cfg"); }) == ErrorKind::IoFailure);
}

TEST_CASE("config sections") {
  const ExperimentConfig e = parse_config(
      "# comment\n"
      "dispersal.variant = convolution   # trailing\n"
      "dispersal.kernel = algebraic\n"
      "dispersal.kernel_exponent = 4\n"
      "reaction.variant = polynomial\n"
      "reaction.coefficients = 0, 1, 0, -1\n"
      "time.t_end = 3\n"
      "time.snapshot_interval = 0.5\n"
      "initial.kind = indicator\n"
      "initial.threshold = -2\n"
      "diagnostics.stretch = 0.3:0.7, 0.4:0.6\n"
      "output.name = conv\n"
      "output.charts = false\n");
  const auto* conv = std::get_if<Convolution>(&e.run.dispersal);
  REQUIRE(conv);
  CHECK(std::get<AlgebraicTailKernel>(conv->kernel.shape).exponent == 4.0);
  CHECK(reaction_rate(e.run.reaction, 0.5) == 0.375);
  CHECK(e.run.snapshot_times.size() == 6);
  CHECK(e.run.snapshot_times.back() == 3.0);
  CHECK(std::get<IndicatorInitial>(e.run.initial).threshold == -2.0);
  CHECK(e.run.diagnostics.stretch_pairs.size() == 2);
  CHECK(e.output.name == "conv");
  CHECK_FALSE(e.output.write_charts);
}

TEST_CASE("override_key replaces or appends") {
  const std::string text = "dispersal.variant = standard_laplacian\ngrid.N = 1024\n";
  CHECK(override_key(text, "grid.N", "2048") == "dispersal.variant = standard_laplacian\ngrid.N = 2048\n");
  CHECK(override_key(text, "grid.L", "50").find("grid.L = 50\n") != std::string::npos);
}

TEST_CASE("presets mirror the figure captions") {
  struct Row {
    const char* name;
    double half_length;
    std::size_t n;
    double t_end;
  };
  const Row table[] = {{"fig1a", 5000.0, 1u << 17, 12.0},
                       {"fig1b", 2000.0, 1u << 15, 20.0},
                       {"fig1c", 2000.0, 1u << 14, 20.0},
                       {"fig1d", 400.0, 1u << 13, 20.0}};
  for (const Row& row : table) {
    const Preset p = make_preset(row.name);
    REQUIRE(p.runs.size() == 1);
    const RunConfig& c = p.runs[0].config;
    INFO(row.name);
    CHECK(c.half_length == row.half_length);
    CHECK(c.n_points == row.n);
    CHECK(c.t_end == row.t_end);
    CHECK(c.dt == 0.01);
    CHECK(std::holds_alternative<KppLogistic>(c.reaction));
    const auto& g = std::get<GaussianInitial>(c.initial);
    CHECK(g.amplitude == 1.0);
    CHECK(g.width == 10.0);  // exp(-x^2/100)
  }
  CHECK(std::get<FractionalLaplacian>(fig1a_config().dispersal).alpha == 0.9);
  const auto& kernel = std::get<Convolution>(fig1b_config().dispersal).kernel;
  const auto& se = std::get<StretchedExponentialKernel>(kernel.shape);
  CHECK(se.exponent == 0.5);
  CHECK(se.rate == 1.0);
  CHECK(kernel_value(kernel, 0.0) == 0.25);
  CHECK(std::get<FastDiffusion>(fig1c_config().dispersal).gamma == 0.5);
  CHECK(std::holds_alternative<StandardLaplacian>(fig1d_config().dispersal));

  const Preset fig2 = make_preset("fig2");
  REQUIRE(fig2.runs.size() == 4);
  for (const auto& run : fig2.runs) {
    CHECK(run.config.diagnostics.levels == std::vector<double>{0.4, 0.6});
    CHECK(run.config.diagnostics.stretch_pairs == std::vector<std::pair<double, double>>{{0.4, 0.6}});
  }
  CHECK(kind_of([] { make_preset("fig3"); }) == ErrorKind::UnknownPreset);
  CHECK(preset_names() == std::vector<std::string>{"fig1a", "fig1b", "fig1c", "fig1d", "fig2"});
}

TEST_CASE("diagnostics CSV") {
  DiagnosticsReport empty;
  std::ostringstream header_only;
  emit_csv(header_only, empty);
  CHECK(header_only.str() == "t,m,M,x_0.4,x_0.5,x_0.6,stretch_0.4_0.6,width,flat_left,flat_right\n");

  const Grid g(50.0, 1024);
  const Field ramp = Field::from_function(g, [](double x) { return std::clamp(0.55 - x / 40.0, 0.0, 0.55); });
  DiagnosticsReport r;
  r.rows.push_back(analyze_snapshot({0.0, ramp}, r.plan));
  const Field wide = Field::from_function(g, [](double x) { return 0.5 * (1.0 - std::tanh(x / 7.0)); });
  Field full = wide;
  for (std::size_t i = 0; i < g.size(); ++i) full[i] = std::min(1.0, 2.0 * wide[i]);
  r.rows.push_back(analyze_snapshot({1.0 / 3.0, full}, r.plan));
  std::ostringstream out;
  emit_csv(out, r);
  const std::string text = out.str();
  std::istringstream lines(text);
  std::string header, row0, row1;
  std::getline(lines, header);
  std::getline(lines, row0);
  std::getline(lines, row1);
  CHECK(count(row0, ",") == 9);
  CHECK(count(row1, ",") == 9);
  CHECK(row0.find(",-inf,") != std::string::npos);  // x_0.6 above the maximum 0.55

  std::istringstream in(text);
  const DiagnosticsReport back = parse_csv(in);
  CHECK(back.plan.levels == r.plan.levels);
  REQUIRE(back.rows.size() == 2);
  const auto& a = r.rows[1];
  const auto& b = back.rows[1];
  CHECK(b.time == a.time);
  CHECK(b.min == a.min);
  CHECK(b.max == a.max);
  for (std::size_t i = 0; i < 3; ++i) CHECK(b.levels[i] == a.levels[i]);
  CHECK(b.stretch[0] == a.stretch[0]);
  CHECK(b.width == a.width);
  CHECK(b.flat_left == a.flat_left);
  CHECK(b.flat_right == a.flat_right);
  CHECK(back.rows[0].levels[2] == Position::minus_infinity());
  CHECK(std::isnan(back.rows[0].stretch[0]));
}

TEST_CASE("SVG charts") {
  const std::vector<Series> one{{"diag", {{0.0, 0.0}, {1.0, 1.0}}}};
  const Chart c = render_chart(one, {"t", "x", "y", true});
  CHECK(c.svg.rfind("<?xml", 0) == 0);
  CHECK(c.svg.find("viewBox=\"0 0 800 500\"") != std::string::npos);
  CHECK(count(c.svg, "<polyline") == 1);
  const auto pts = c.svg.find("points=\"");
  const auto end = c.svg.find('"', pts + 8);
  CHECK(count(c.svg.substr(pts + 8, end - pts - 8), ",") == 2);
  CHECK(render_chart(one, {"t", "x", "y", true}).svg == c.svg);

  std::vector<Series> four;
  for (int s = 0; s < 4; ++s) {
    Series series{"run" + std::to_string(s), {}};
    for (int i = 0; i <= 10; ++i) series.points.emplace_back(i, s * i);
    four.push_back(series);
  }
  const Chart f = render_chart(four, {"Stretching", "t", "x_0.4 - x_0.6", true});
  CHECK(count(f.svg, "<polyline") == 4);
  for (int s = 0; s < 4; ++s) CHECK(count(f.svg, ">run" + std::to_string(s) + "</text>") == 1);

  std::vector<Series> with_sentinel{{"s", {{0.0, 1.0}, {1.0, -INFINITY}, {2.0, 3.0}}}};
  CHECK(render_chart(with_sentinel, {}).dropped_points == 1);
  std::vector<Series> too_few{{"s", {{0.0, 1.0}, {1.0, INFINITY}}}};
  CHECK(kind_of([&] { render_chart(too_few, {}); }) == ErrorKind::EmptySeries);
  CHECK(kind_of([] { render_chart(std::vector<Series>{}, {}); }) == ErrorKind::EmptySeries);

  const fs::path dir = scratch("charts");
  CHECK(emit_chart(dir / "a.svg", four, {}) == 0);
  CHECK(emit_chart(dir / "b.svg", four, {}) == 0);
  std::ifstream a(dir / "a.svg"), b(dir / "b.svg");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("run_and_emit writes the output bundle") {
  ExperimentConfig e = parse_config(
      "dispersal.variant=standard_laplacian\ngrid.L=100\ngrid.N=1024\ntime.t_end=3\n"
      "diagnostics.speed_windows=0:3\n");
  const fs::path dir = scratch("bundle");
  const RunOutput out = run_and_emit(e.run, "small", dir);
  CHECK(out.files.size() == 5);
  for (const auto& f : out.files) CHECK(fs::file_size(f) > 0);
  CHECK(out.report.rows.size() == 4);

  e.run.half_length = 20.0;
  e.run.n_points = 256;
  e.run.t_end = 20.0;
  CHECK_THROWS_AS(run_and_emit(e.run, "small", dir), GuardBreachedError);
}

TEST_CASE("sweeps run every value and summarize") {
  const fs::path dir = scratch("sweep");
  const std::string text =
      "dispersal.variant=fractional_laplacian\ngrid.L=200\ngrid.N=1024\ntime.t_end=2\n";
  const auto entries = run_sweep(text, "dispersal.alpha", {"0.9", "1", "2"}, dir, {}, 2);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].ok);
  CHECK(entries[1].ok);
  CHECK_FALSE(entries[2].ok);
  CHECK(entries[2].error.find("ValidationFailed") != std::string::npos);
  CHECK(fs::exists(dir / "dispersal.alpha=0.9" / "run_diagnostics.csv"));
  CHECK(fs::exists(dir / "sweep_summary.csv"));

  // Concurrent and sequential sweeps give identical runs.
  const auto serial = run_sweep(text, "dispersal.alpha", {"0.9", "1"}, scratch("serial"), {}, 1);
  CHECK(serial[1].output.trajectory.snapshots.back().field == entries[1].output.trajectory.snapshots.back().field);
}
