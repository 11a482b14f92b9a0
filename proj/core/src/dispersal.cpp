#include "accelfront/dispersal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "accelfront/error.hpp"
#include "fft.hpp"

namespace accelfront {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_positive_dt(double dt, bool allow_zero) {
  if (!std::isfinite(dt) || dt < 0.0 || (!allow_zero && dt == 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "invalid time step " + num(dt));
  }
}

void check_fractional_gate(double alpha, double gamma) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "fractional fast diffusion needs 0 < alpha < 1, got " + num(alpha));
  }
  const double lower = std::max(1.0 - 2.0 * alpha, 0.0);
  if (!(gamma > lower && gamma <= 1.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "fractional fast diffusion needs max(1-2alpha,0) = " +
                                                    num(lower) + " < gamma <= 1, got gamma = " +
                                                    num(gamma));
  }
}

void validate_kernel(const KernelSpec& kernel) {
  std::visit(overloaded{
                 [](const StretchedExponentialKernel& k) {
                   if (!(k.exponent > 0.0 && k.exponent < 1.0) || !(k.rate > 0.0)) {
                     throw Error(ErrorKind::KernelInvalid,
                                 "stretched exponential kernel needs 0 < exponent < 1 and rate > 0");
                   }
                 },
                 [](const AlgebraicTailKernel& k) {
                   if (!(k.exponent > 2.0)) {
                     throw Error(ErrorKind::KernelInvalid,
                                 "algebraic kernel needs exponent > 2, got " + num(k.exponent));
                   }
                 },
                 [](const TabulatedKernel& k) {
                   if (k.x.size() < 2 || k.x.size() != k.value.size()) {
                     throw Error(ErrorKind::KernelInvalid, "kernel table needs >= 2 (x, J) rows");
                   }
                   for (std::size_t i = 0; i < k.x.size(); ++i) {
                     if (i > 0 && !(k.x[i] > k.x[i - 1])) {
                       throw Error(ErrorKind::KernelInvalid, "kernel table x must increase");
                     }
                     if (!(k.value[i] >= 0.0)) {
                       throw Error(ErrorKind::KernelInvalid, "kernel table has a negative value");
                     }
                   }
                 },
             },
             kernel.shape);
}

double interpolate(const TabulatedKernel& table, double x) {
  const auto& xs = table.x;
  if (x < xs.front() || x > xs.back()) return 0.0;
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return table.value.back();
  const auto hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * table.value[lo] + w * table.value[hi];
}

std::vector<double> raw_kernel_samples(const KernelSpec& kernel, const Grid& grid) {
  validate_kernel(kernel);
  std::vector<double> samples(grid.size());
  const double dx = grid.dx();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    samples[j] = kernel_value(kernel, static_cast<double>(grid.signed_index(j)) * dx);
  }
  return samples;
}

// Half-spectrum slice (k = 0..N/2) of an even symbol.
std::vector<double> half_of(std::span<const double> full) {
  return {full.begin(), full.begin() + static_cast<std::ptrdiff_t>(full.size() / 2 + 1)};
}

void fractional_fast_diffusion_advance(std::span<double> u, const Symbol& symbol, double gamma,
                                       double dt, std::size_t substeps, double floor) {
  const std::vector<double> multiplier = half_of(symbol.values());
  const double h = dt / static_cast<double>(substeps);
  std::vector<double> w(u.size());
  for (std::size_t s = 0; s < substeps; ++s) {
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::pow(std::max(u[i], floor), gamma);
    detail::apply_even_multiplier(w, multiplier);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += h * w[i];
  }
}

}  // namespace

void validate_dispersal(const DispersalSpec& spec) {
  std::visit(overloaded{
                 [](const FractionalLaplacian& s) {
                   if (!(s.alpha > 0.0 && s.alpha <= 1.0)) {
                     throw Error(ErrorKind::ParameterOutOfRange,
                                 "fractional Laplacian needs 0 < alpha <= 1, got " + num(s.alpha));
                   }
                 },
                 [](const Convolution& s) { validate_kernel(s.kernel); },
                 [](const StandardLaplacian&) {},
                 [](const FastDiffusion& s) {
                   if (!(s.gamma > 0.0 && s.gamma <= 1.0)) {
                     throw Error(ErrorKind::ParameterOutOfRange,
                                 "fast diffusion needs 0 < gamma <= 1, got " + num(s.gamma));
                   }
                   if (!(s.regularization > 0.0)) {
                     throw Error(ErrorKind::ParameterOutOfRange, "regularization floor must be > 0");
                   }
                 },
                 [](const FractionalFastDiffusion& s) {
                   check_fractional_gate(s.alpha, s.gamma);
                   if (!(s.regularization > 0.0)) {
                     throw Error(ErrorKind::ParameterOutOfRange, "regularization floor must be > 0");
                   }
                 },
             },
             spec);
}

bool is_linear(const DispersalSpec& spec) noexcept {
  return std::holds_alternative<FractionalLaplacian>(spec) ||
         std::holds_alternative<Convolution>(spec) ||
         std::holds_alternative<StandardLaplacian>(spec);
}

std::string describe(const DispersalSpec& spec) {
  return std::visit(
      overloaded{
          [](const FractionalLaplacian& s) { return "fractional_laplacian(alpha=" + num(s.alpha) + ")"; },
          [](const Convolution& s) {
            return std::visit(
                overloaded{
                    [](const StretchedExponentialKernel& k) {
                      return "convolution(stretched_exponential a=" + num(k.exponent) +
                             " b=" + num(k.rate) + ")";
                    },
                    [](const AlgebraicTailKernel& k) {
                      return "convolution(algebraic p=" + num(k.exponent) + ")";
                    },
                    [](const TabulatedKernel& k) {
                      return "convolution(tabulated, " + std::to_string(k.x.size()) + " rows)";
                    },
                },
                s.kernel.shape);
          },
          [](const StandardLaplacian&) { return std::string("standard_laplacian"); },
          [](const FastDiffusion& s) { return "fast_diffusion(gamma=" + num(s.gamma) + ")"; },
          [](const FractionalFastDiffusion& s) {
            return "fractional_fast_diffusion(alpha=" + num(s.alpha) + " gamma=" + num(s.gamma) + ")";
          },
      },
      spec);
}

double kernel_value(const KernelSpec& kernel, double x) {
  const double ax = std::abs(x);
  return std::visit(overloaded{
                        [ax](const StretchedExponentialKernel& k) {
                          const double c = k.exponent * std::pow(k.rate, 1.0 / k.exponent) /
                                           (2.0 * std::tgamma(1.0 / k.exponent));
                          return c * std::exp(-k.rate * std::pow(ax, k.exponent));
                        },
                        [ax](const AlgebraicTailKernel& k) {
                          const double c = k.exponent * std::sin(std::numbers::pi / k.exponent) /
                                           (2.0 * std::numbers::pi);
                          return c / (1.0 + std::pow(ax, k.exponent));
                        },
                        [ax](const TabulatedKernel& k) {
                          // One-sided tables describe J(|x|); two-sided ones are symmetrized.
                          if (k.x.front() >= 0.0) return interpolate(k, ax);
                          return 0.5 * (interpolate(k, ax) + interpolate(k, -ax));
                        },
                    },
                    kernel.shape);
}

double discrete_kernel_mass(const KernelSpec& kernel, const Grid& grid) {
  const std::vector<double> samples = raw_kernel_samples(kernel, grid);
  double mass = 0.0;
  for (double v : samples) mass += v;
  return mass * grid.dx();
}

std::vector<double> sample_kernel(const KernelSpec& kernel, const Grid& grid) {
  std::vector<double> samples = raw_kernel_samples(kernel, grid);
  double mass = 0.0;
  for (double v : samples) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::KernelInvalid, "kernel sample is negative or not finite");
    }
    mass += v;
  }
  mass *= grid.dx();
  if (!(mass > 0.0)) throw Error(ErrorKind::KernelInvalid, "kernel has zero mass on this grid");
  if (kernel.normalize) {
    for (double& v : samples) v /= mass;
  } else if (std::abs(mass - 1.0) > 1e-6) {
    throw Error(ErrorKind::KernelInvalid,
                "unnormalized kernel has discrete mass " + num(mass) + " (needs 1 +- 1e-6)");
  }
  return samples;
}

TabulatedKernel read_kernel_table(std::istream& in) {
  TabulatedKernel table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double x = 0.0;
    double j = 0.0;
    if (!(row >> x)) continue;
    if (!(row >> j)) {
      throw Error(ErrorKind::ParseError, "kernel table line " + std::to_string(line_no) +
                                             " needs two columns");
    }
    table.x.push_back(x);
    table.value.push_back(j);
  }
  validate_kernel(KernelSpec{table, true});
  return table;
}

TabulatedKernel load_kernel_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open kernel table " + path.string());
  return read_kernel_table(in);
}

Symbol::Symbol(Grid grid, std::vector<double> multiplier)
    : grid_(grid), multiplier_(std::move(multiplier)) {
  const std::size_t n = grid_.size();
  if (multiplier_.size() != n) throw Error(ErrorKind::LengthMismatch, "symbol/grid size mismatch");
  if (multiplier_[0] != 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "symbol must vanish at frequency 0");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(multiplier_[k] <= 0.0)) {
      throw Error(ErrorKind::ParameterOutOfRange, "symbol must be nonpositive");
    }
    if (k > 0 && multiplier_[k] != multiplier_[n - k]) {
      throw Error(ErrorKind::ParameterOutOfRange, "symbol must be even in frequency");
    }
  }
}

double Symbol::magnitude() const noexcept {
  double m = 0.0;
  for (double v : multiplier_) m = std::max(m, std::abs(v));
  return m;
}

Symbol build_symbol(const DispersalSpec& spec, const Grid& grid) {
  validate_dispersal(spec);
  const std::size_t n = grid.size();
  std::vector<double> m(n, 0.0);
  std::visit(overloaded{
                 [&](const FractionalLaplacian& s) {
                   for (std::size_t k = 0; k < n; ++k) {
                     const double xi = std::abs(grid.frequency(k));
                     m[k] = s.alpha == 1.0 ? -(xi * xi) : -std::pow(xi, 2.0 * s.alpha);
                   }
                 },
                 [&](const StandardLaplacian&) {
                   for (std::size_t k = 0; k < n; ++k) {
                     const double xi = grid.frequency(k);
                     m[k] = -(xi * xi);
                   }
                 },
                 [&](const Convolution& s) {
                   const std::vector<double> samples = sample_kernel(s.kernel, grid);
                   std::vector<std::complex<double>> half(n / 2 + 1);
                   detail::fft_forward(samples, half);
                   const double dx = grid.dx();
                   for (std::size_t k = 1; k <= n / 2; ++k) {
                     // J >= 0 with unit mass gives J^ <= 1; clip roundoff above it.
                     m[k] = std::min(dx * half[k].real() - 1.0, 0.0);
                     m[n - k] = m[k];
                   }
                   m[0] = 0.0;
                 },
                 [](const FastDiffusion&) {
                   throw Error(ErrorKind::NonlinearVariant, "fast diffusion has no Fourier symbol");
                 },
                 [](const FractionalFastDiffusion&) {
                   throw Error(ErrorKind::NonlinearVariant,
                               "fractional fast diffusion has no Fourier symbol");
                 },
             },
             spec);
  return Symbol(grid, std::move(m));
}

Field semigroup_step(const Field& field, const Symbol& symbol, double dt) {
  if (!(field.grid() == symbol.grid())) {
    throw Error(ErrorKind::LengthMismatch, "field and symbol live on different grids");
  }
  check_positive_dt(dt, true);
  Field out = field;
  if (dt == 0.0) return out;
  std::vector<double> factor = half_of(symbol.values());
  for (double& f : factor) f = std::exp(f * dt);
  detail::apply_even_multiplier(out.values(), factor);
  return out;
}

std::vector<double> apply_symbol(const Field& field, const Symbol& symbol) {
  if (!(field.grid() == symbol.grid())) {
    throw Error(ErrorKind::LengthMismatch, "field and symbol live on different grids");
  }
  std::vector<double> out(field.values().begin(), field.values().end());
  detail::apply_even_multiplier(out, half_of(symbol.values()));
  return out;
}

std::vector<double> convolve_direct(const Field& field, const KernelSpec& kernel) {
  const Grid& grid = field.grid();
  const std::vector<double> j = sample_kernel(kernel, grid);
  const std::size_t n = grid.size();
  const double dx = grid.dx();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      acc += j[s] * (field[(i + n - s) % n] - field[i]);
    }
    out[i] = acc * dx;
  }
  return out;
}

namespace {

// Solves a tridiagonal system in place (rhs becomes the solution). In the
// cyclic case lower[0] couples to the last unknown and upper[n-1] to the first
// (Sherman-Morrison correction of one open solve).
void solve_tridiagonal(std::span<const double> lower, std::vector<double> diag,
                       std::span<const double> upper, std::span<double> rhs, bool cyclic) {
  const std::size_t n = diag.size();
  auto thomas = [&](const std::vector<double>& d, std::span<double> x) {
    std::vector<double> c(n);
    double pivot = d[0];
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) pivot = d[i] - lower[i] * c[i - 1];
      if (!(pivot > 0.0) || !std::isfinite(pivot)) {
        throw Error(ErrorKind::SolverSingular, "nonpositive pivot in fast-diffusion solve");
      }
      c[i] = upper[i] / pivot;
      x[i] = (x[i] - (i > 0 ? lower[i] * x[i - 1] : 0.0)) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  };
  if (!cyclic) {
    thomas(diag, rhs);
    return;
  }
  const double shift = -diag[0];
  const double corner_low = lower[0];
  const double corner_up = upper[n - 1];
  diag[0] -= shift;
  diag[n - 1] -= corner_low * corner_up / shift;
  thomas(diag, rhs);
  std::vector<double> z(n, 0.0);
  z[0] = shift;
  z[n - 1] = corner_up;
  thomas(diag, z);
  const double factor = (rhs[0] + corner_low * rhs[n - 1] / shift) /
                        (1.0 + z[0] + corner_low * z[n - 1] / shift);
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= factor * z[i];
}

}  // namespace

Field fast_diffusion_step(const Field& field, double gamma, double dt, double regularization,
                          FiniteVolumeEnds ends) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "fast diffusion needs 0 < gamma <= 1");
  }
  if (!(regularization > 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "regularization floor must be positive");
  }
  check_positive_dt(dt, false);
  const std::size_t n = field.size();
  const bool cyclic = ends == FiniteVolumeEnds::Periodic;
  const double dx = field.grid().dx();
  const double r = dt / (dx * dx);

  // phi(u) = u^gamma above the floor, continued linearly below it, so that
  // phi'(u) = gamma * max(u, floor)^(gamma - 1) everywhere.
  const double floor_value = std::pow(regularization, gamma);
  const double floor_slope = gamma * std::pow(regularization, gamma - 1.0);
  auto phi = [&](double v) {
    return v >= regularization ? std::pow(v, gamma) : floor_value + floor_slope * (v - regularization);
  };
  auto dphi = [&](double v) { return gamma * std::pow(std::max(v, regularization), gamma - 1.0); };

  const auto f = field.values();
  std::vector<double> p(n);
  auto residual = [&](const std::vector<double>& w, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) p[i] = phi(w[i]);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lap = 0.0;
      if (i > 0 || cyclic) lap += p[i > 0 ? i - 1 : n - 1] - p[i];
      if (i + 1 < n || cyclic) lap += p[i + 1 < n ? i + 1 : 0] - p[i];
      out[i] = w[i] - f[i] - r * lap;
      worst = std::max(worst, std::abs(out[i]));
    }
    return worst;
  };

  std::vector<double> u(f.begin(), f.end());
  std::vector<double> res(n), trial(n), trial_res(n), step(n), lower(n), diag(n), upper(n), slope(n);
  double norm = residual(u, res);
  constexpr double kTolerance = 1e-14;
  constexpr int kMaxIterations = 100;
  for (int iter = 0; iter < kMaxIterations && norm > kTolerance; ++iter) {
    for (std::size_t i = 0; i < n; ++i) slope[i] = dphi(u[i]);
    for (std::size_t i = 0; i < n; ++i) {
      diag[i] = 1.0;
      lower[i] = 0.0;
      upper[i] = 0.0;
      if (i > 0 || cyclic) {
        lower[i] = -r * slope[i > 0 ? i - 1 : n - 1];
        diag[i] += r * slope[i];
      }
      if (i + 1 < n || cyclic) {
        upper[i] = -r * slope[i + 1 < n ? i + 1 : 0];
        diag[i] += r * slope[i];
      }
      step[i] = -res[i];
    }
    solve_tridiagonal(lower, diag, upper, step, cyclic);

    // Damped update: halve until the residual no longer grows.
    double lambda = 1.0;
    double trial_norm = 0.0;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + lambda * step[i];
      trial_norm = residual(trial, trial_res);
      if (trial_norm <= norm || lambda < 1e-6) break;
      lambda *= 0.5;
    }
    std::swap(u, trial);
    std::swap(res, trial_res);
    norm = trial_norm;
    double moved = 0.0;
    for (double s : step) moved = std::max(moved, std::abs(lambda * s));
    if (moved <= 1e-16) break;
  }
  if (!(norm <= 1e-10)) {
    throw Error(ErrorKind::SolverSingular, "fast-diffusion Newton iteration stalled at residual " + num(norm));
  }
  return Field(field.grid(), std::move(u));
}

std::size_t fractional_fast_diffusion_substeps(const Grid& grid, double alpha, double gamma,
                                               double dt, double regularization) {
  const double symbol_max = std::pow(grid.max_frequency(), 2.0 * alpha);
  const double stiffness = dt * symbol_max * gamma * std::pow(regularization, gamma - 1.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(stiffness / 0.5)));
}

Field fractional_fast_diffusion_step(const Field& field, double alpha, double gamma, double dt,
                                     double regularization) {
  check_fractional_gate(alpha, gamma);
  check_positive_dt(dt, false);
  const Symbol symbol = build_symbol(FractionalLaplacian{alpha}, field.grid());
  const std::size_t substeps =
      fractional_fast_diffusion_substeps(field.grid(), alpha, gamma, dt, regularization);
  Field out = field;
  fractional_fast_diffusion_advance(out.values(), symbol, gamma, dt, substeps, regularization);
  return out;
}

DispersalOperator::DispersalOperator(DispersalSpec spec, Grid grid, FiniteVolumeEnds ends)
    : spec_(std::move(spec)), grid_(grid), ends_(ends) {
  validate_dispersal(spec_);
  if (is_linear(spec_)) {
    symbol_ = build_symbol(spec_, grid_);
  } else if (const auto* ffd = std::get_if<FractionalFastDiffusion>(&spec_)) {
    symbol_ = build_symbol(FractionalLaplacian{ffd->alpha}, grid_);
  }
}

void DispersalOperator::advance(Field& u, double dt) {
  if (!(u.grid() == grid_)) throw Error(ErrorKind::LengthMismatch, "field is on another grid");
  if (dt == 0.0) return;
  if (is_linear(spec_)) {
    check_positive_dt(dt, false);
    if (dt != cached_dt_) {
      cached_factor_ = half_of(symbol_->values());
      for (double& f : cached_factor_) f = std::exp(f * dt);
      cached_dt_ = dt;
    }
    detail::apply_even_multiplier(u.values(), cached_factor_);
    return;
  }
  if (const auto* fd = std::get_if<FastDiffusion>(&spec_)) {
    u = fast_diffusion_step(u, fd->gamma, dt, fd->regularization, ends_);
    return;
  }
  const auto& ffd = std::get<FractionalFastDiffusion>(spec_);
  check_positive_dt(dt, false);
  const std::size_t substeps =
      fractional_fast_diffusion_substeps(grid_, ffd.alpha, ffd.gamma, dt, ffd.regularization);
  fractional_fast_diffusion_advance(u.values(), *symbol_, ffd.gamma, dt, substeps,
                                    ffd.regularization);
}

}  // namespace accelfront
