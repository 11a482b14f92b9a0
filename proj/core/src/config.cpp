#include "accelfront/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "accelfront/error.hpp"

namespace accelfront {
namespace {

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys{
      "grid.L",
      "grid.N",
      "grid.boundary",
      "grid.guard_threshold",
      "grid.guard_sides",
      "dispersal.variant",
      "dispersal.alpha",
      "dispersal.gamma",
      "dispersal.regularization",
      "dispersal.kernel",
      "dispersal.kernel_exponent",
      "dispersal.kernel_rate",
      "dispersal.kernel_file",
      "dispersal.normalize",
      "reaction.variant",
      "reaction.coefficients",
      "time.dt",
      "time.t_end",
      "time.snapshots",
      "time.snapshot_interval",
      "initial.kind",
      "initial.amplitude",
      "initial.width",
      "initial.threshold",
      "initial.file",
      "diagnostics.levels",
      "diagnostics.stretch",
      "diagnostics.flat_level",
      "diagnostics.flat_radius",
      "diagnostics.width_upper",
      "diagnostics.width_lower",
      "diagnostics.speed_windows",
      "output.dir",
      "output.name",
      "output.trajectory",
      "output.charts",
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto* b = s.begin();
  const auto* e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

using Document = std::map<std::string, std::string, std::less<>>;

class Reader {
 public:
  explicit Reader(Document doc) : doc_(std::move(doc)) {}

  bool has(std::string_view key) const { return doc_.find(key) != doc_.end(); }

  const std::string& text(std::string_view key) const { return doc_.find(key)->second; }

  double number(std::string_view key, double fallback) const {
    return has(key) ? parse_number(key, text(key)) : fallback;
  }

  std::size_t count(std::string_view key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = text(key);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw Error(ErrorKind::ParseError, std::string(key) + ": expected an integer, got '" + v + "'");
    }
    return out;
  }

  bool flag(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = text(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error(ErrorKind::ParseError, std::string(key) + ": expected true/false, got '" + v + "'");
  }

  std::vector<double> numbers(std::string_view key) const {
    std::vector<double> out;
    for (const auto& part : split(text(key), ',')) out.push_back(parse_number(key, part));
    return out;
  }

  std::vector<std::pair<double, double>> pairs(std::string_view key) const {
    std::vector<std::pair<double, double>> out;
    for (const auto& part : split(text(key), ',')) {
      const auto ab = split(part, ':');
      if (ab.size() != 2) {
        throw Error(ErrorKind::ParseError, std::string(key) + ": expected a:b pairs, got '" + part + "'");
      }
      out.emplace_back(parse_number(key, ab[0]), parse_number(key, ab[1]));
    }
    return out;
  }

  static double parse_number(std::string_view key, const std::string& v) {
    try {
      std::size_t used = 0;
      const double out = std::stod(v, &used);
      if (used == v.size()) return out;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::ParseError, std::string(key) + ": expected a number, got '" + v + "'");
  }

 private:
  Document doc_;
};

Document tokenize(std::string_view text) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'section.key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!known_keys().contains(key)) {
      throw Error(ErrorKind::UnknownKey, "line " + std::to_string(line_no) + ": '" + key + "'");
    }
    doc[key] = value;
  }
  return doc;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  std::filesystem::path p(file);
  return p.is_relative() && !base.empty() ? base / p : p;
}

KernelSpec parse_kernel(const Reader& r, const std::filesystem::path& base) {
  KernelSpec kernel;
  kernel.normalize = r.flag("dispersal.normalize", true);
  const std::string shape = r.has("dispersal.kernel") ? r.text("dispersal.kernel") : "stretched_exponential";
  if (shape == "stretched_exponential") {
    kernel.shape = StretchedExponentialKernel{r.number("dispersal.kernel_exponent", 0.5),
                                              r.number("dispersal.kernel_rate", 1.0)};
  } else if (shape == "algebraic") {
    kernel.shape = AlgebraicTailKernel{r.number("dispersal.kernel_exponent", 3.0)};
  } else if (shape == "tabulated") {
    if (!r.has("dispersal.kernel_file")) {
      throw Error(ErrorKind::MissingRequired, "dispersal.kernel_file for a tabulated kernel");
    }
    kernel.shape = load_kernel_table(resolve(base, r.text("dispersal.kernel_file")));
  } else {
    throw Error(ErrorKind::ParseError, "dispersal.kernel: unknown kernel '" + shape + "'");
  }
  return kernel;
}

DispersalSpec parse_dispersal(const Reader& r, const std::filesystem::path& base) {
  if (!r.has("dispersal.variant")) throw Error(ErrorKind::MissingRequired, "dispersal.variant");
  const std::string& variant = r.text("dispersal.variant");
  const double floor = r.number("dispersal.regularization", kDefaultRegularizationFloor);
  if (variant == "fractional_laplacian") return FractionalLaplacian{r.number("dispersal.alpha", 0.5)};
  if (variant == "standard_laplacian") return StandardLaplacian{};
  if (variant == "convolution") return Convolution{parse_kernel(r, base)};
  if (variant == "fast_diffusion") return FastDiffusion{r.number("dispersal.gamma", 0.5), floor};
  if (variant == "fractional_fast_diffusion") {
    return FractionalFastDiffusion{r.number("dispersal.alpha", 0.5), r.number("dispersal.gamma", 0.5),
                                   floor};
  }
  throw Error(ErrorKind::ParseError, "dispersal.variant: unknown variant '" + variant + "'");
}

ReactionSpec parse_reaction(const Reader& r) {
  const std::string variant = r.has("reaction.variant") ? r.text("reaction.variant") : "kpp";
  if (variant == "kpp") return KppLogistic{};
  if (variant == "none") return NoReaction{};
  if (variant == "polynomial") {
    if (!r.has("reaction.coefficients")) {
      throw Error(ErrorKind::MissingRequired, "reaction.coefficients for a polynomial reaction");
    }
    const std::vector<double> c = r.numbers("reaction.coefficients");
    std::ostringstream label;
    label << "polynomial(" << r.text("reaction.coefficients") << ")";
    return CustomMonostable{[c](double u) {
                              double acc = 0.0;
                              for (std::size_t i = c.size(); i-- > 0;) acc = acc * u + c[i];
                              return acc;
                            },
                            label.str()};
  }
  throw Error(ErrorKind::ParseError, "reaction.variant: unknown variant '" + variant + "'");
}

InitialCondition parse_initial(const Reader& r, const std::filesystem::path& base) {
  const std::string kind = r.has("initial.kind") ? r.text("initial.kind") : "gaussian";
  if (kind == "gaussian") {
    return GaussianInitial{r.number("initial.amplitude", 1.0), r.number("initial.width", 10.0)};
  }
  if (kind == "indicator") return IndicatorInitial{r.number("initial.threshold", 0.0)};
  if (kind == "tabulated") {
    if (!r.has("initial.file")) throw Error(ErrorKind::MissingRequired, "initial.file");
    const auto path = resolve(base, r.text("initial.file"));
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
    TabulatedInitial table;
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream row(line);
      double x = 0.0;
      double u = 0.0;
      if (row >> x >> u) {
        table.x.push_back(x);
        table.u.push_back(u);
      }
    }
    return table;
  }
  throw Error(ErrorKind::ParseError, "initial.kind: unknown kind '" + kind + "'");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const Reader r(tokenize(text));
  ExperimentConfig out;
  RunConfig& c = out.run;

  c.dispersal = parse_dispersal(r, base_dir);
  c.reaction = parse_reaction(r);
  c.initial = parse_initial(r, base_dir);

  c.half_length = r.number("grid.L", c.half_length);
  c.n_points = r.count("grid.N", c.n_points);
  if (r.has("grid.boundary")) {
    const std::string& b = r.text("grid.boundary");
    if (b == "periodic") {
      c.boundary = Boundary::Periodic;
    } else if (b == "reflecting") {
      c.boundary = Boundary::Reflecting;
    } else {
      throw Error(ErrorKind::ParseError, "grid.boundary: expected periodic or reflecting");
    }
  }
  c.guard_threshold = r.number("grid.guard_threshold", c.guard_threshold);
  if (r.has("grid.guard_sides")) {
    const std::string& s = r.text("grid.guard_sides");
    if (s == "auto") {
      c.guard_sides = GuardSides::Automatic;
    } else if (s == "both") {
      c.guard_sides = GuardSides::Both;
    } else if (s == "right") {
      c.guard_sides = GuardSides::Right;
    } else {
      throw Error(ErrorKind::ParseError, "grid.guard_sides: expected auto, both or right");
    }
  }

  c.dt = r.number("time.dt", c.dt);
  c.t_end = r.number("time.t_end", c.t_end);
  if (r.has("time.snapshots")) {
    c.snapshot_times = r.numbers("time.snapshots");
  } else if (r.has("time.snapshot_interval")) {
    const double every = r.number("time.snapshot_interval", 1.0);
    if (!(every > 0.0)) throw Error(ErrorKind::ValidationFailed, "time.snapshot_interval must be > 0");
    for (std::size_t k = 1;; ++k) {
      const double t = static_cast<double>(k) * every;
      if (t >= c.t_end * (1.0 - 1e-12)) break;
      c.snapshot_times.push_back(t);
    }
    if (c.t_end > 0.0) c.snapshot_times.push_back(c.t_end);
  }

  DiagnosticsPlan& plan = c.diagnostics;
  if (r.has("diagnostics.levels")) plan.levels = r.numbers("diagnostics.levels");
  if (r.has("diagnostics.stretch")) plan.stretch_pairs = r.pairs("diagnostics.stretch");
  if (r.has("diagnostics.speed_windows")) plan.speed_windows = r.pairs("diagnostics.speed_windows");
  plan.flat_level = r.number("diagnostics.flat_level", plan.flat_level);
  plan.flat_radius = r.number("diagnostics.flat_radius", plan.flat_radius);
  plan.width_upper = r.number("diagnostics.width_upper", plan.width_upper);
  plan.width_lower = r.number("diagnostics.width_lower", plan.width_lower);

  if (r.has("output.dir")) out.output.directory = resolve(base_dir, r.text("output.dir"));
  if (r.has("output.name")) out.output.name = r.text("output.name");
  out.output.write_trajectory = r.flag("output.trajectory", true);
  out.output.write_charts = r.flag("output.charts", true);

  try {
    validate(c);
    for (const auto& [a, b] : plan.stretch_pairs) {
      if (!(a > 0.0 && a < b && b < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "stretch pairs need 0 < a < b < 1");
      }
    }
    if (!(plan.flat_level > 0.0 && plan.flat_level < 1.0) || !(plan.flat_radius > 0.0)) {
      throw Error(ErrorKind::InvalidConfig, "flatness needs a level in (0, 1) and a radius > 0");
    }
    if (!(plan.width_lower > 0.0 && plan.width_lower < plan.width_upper && plan.width_upper < 1.0)) {
      throw Error(ErrorKind::InvalidConfig, "interface width levels need 0 < lower < upper < 1");
    }
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationFailed, e.what());
  }
  return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::string override_key(std::string_view text, std::string_view key, std::string_view value) {
  std::istringstream in{std::string(text)};
  std::ostringstream out;
  std::string line;
  bool replaced = false;
  while (std::getline(in, line)) {
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    const auto eq = body.find('=');
    if (eq != std::string::npos && trim(std::string_view(body).substr(0, eq)) == key) {
      out << key << " = " << value << '\n';
      replaced = true;
    } else {
      out << line << '\n';
    }
  }
  if (!replaced) out << key << " = " << value << '\n';
  return out.str();
}

}  // namespace accelfront
