#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "accelfront/grid.hpp"

namespace accelfront {

/// Lower bound applied to u before evaluating u^(gamma-1) in the fast-diffusion schemes.
inline constexpr double kDefaultRegularizationFloor = 1e-8;

/// J(x) = c * exp(-rate * |x|^exponent), 0 < exponent < 1.
struct StretchedExponentialKernel {
  double exponent = 0.5;
  double rate = 1.0;
};

/// J(x) = c / (1 + |x|^exponent), exponent > 2.
struct AlgebraicTailKernel {
  double exponent = 3.0;
};

/// Samples (x, J(x)) with strictly increasing x; linearly interpolated, zero outside.
struct TabulatedKernel {
  std::vector<double> x;
  std::vector<double> value;
};

struct KernelSpec {
  std::variant<StretchedExponentialKernel, AlgebraicTailKernel, TabulatedKernel> shape;
  /// Rescale the sampled kernel so that its discrete mass is exactly 1.
  bool normalize = true;
};

struct FractionalLaplacian {
  double alpha = 0.5;
};
struct StandardLaplacian {};
struct Convolution {
  KernelSpec kernel;
};
struct FastDiffusion {
  double gamma = 0.5;
  double regularization = kDefaultRegularizationFloor;
};
struct FractionalFastDiffusion {
  double alpha = 0.5;
  double gamma = 0.5;
  double regularization = kDefaultRegularizationFloor;
};

using DispersalSpec = std::variant<FractionalLaplacian, Convolution, StandardLaplacian,
                                   FastDiffusion, FractionalFastDiffusion>;

/// Throws Error(ParameterOutOfRange) or Error(KernelInvalid).
void validate_dispersal(const DispersalSpec& spec);
bool is_linear(const DispersalSpec& spec) noexcept;
std::string describe(const DispersalSpec& spec);

/// Pointwise kernel value including the closed-form normalizing constant for
/// the analytic shapes (tabulated kernels are returned as stored, symmetrized).
double kernel_value(const KernelSpec& kernel, double x);

/// Kernel samples J(j*dx) laid out in periodic slot order: slot j holds the
/// offset j*dx for j <= N/2 and (j-N)*dx otherwise. Normalized if requested.
/// Throws Error(KernelInvalid) for negative samples, zero mass, or an
/// unnormalized kernel whose discrete mass is not 1 +- 1e-6.
std::vector<double> sample_kernel(const KernelSpec& kernel, const Grid& grid);

/// Raw trapezoid mass dx * sum_j J(j*dx) of the unnormalized samples.
double discrete_kernel_mass(const KernelSpec& kernel, const Grid& grid);

/// Reads a whitespace-separated two-column table (x, J(x)); '#' starts a comment.
TabulatedKernel read_kernel_table(std::istream& in);
TabulatedKernel load_kernel_table(const std::filesystem::path& path);

/// Real Fourier multiplier of a linear dispersal operator, one value per frequency slot.
class Symbol {
 public:
  Symbol(Grid grid, std::vector<double> multiplier);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return multiplier_; }
  double operator[](std::size_t k) const noexcept { return multiplier_[k]; }
  /// max_k |m_k|
  double magnitude() const noexcept;

 private:
  Grid grid_;
  std::vector<double> multiplier_;
};

/// Throws Error(NonlinearVariant) for the fast-diffusion variants.
Symbol build_symbol(const DispersalSpec& spec, const Grid& grid);

/// Exact flow of u_t = D u for a linear symbol: c_k -> exp(m_k dt) c_k. Not clamped.
Field semigroup_step(const Field& field, const Symbol& symbol, double dt);

/// Spectral evaluation of D u (multiplication by m_k), not clamped.
std::vector<double> apply_symbol(const Field& field, const Symbol& symbol);

/// O(N^2) periodic quadrature of J*u - u at every node. Test oracle for the
/// spectral convolution path.
std::vector<double> convolve_direct(const Field& field, const KernelSpec& kernel);

enum class FiniteVolumeEnds { ZeroFlux, Periodic };

/// One fully implicit backward-Euler step of (phi(u))_xx = (D(u) u_x)_x, where
/// phi(u) = u^gamma above the floor and is continued linearly below it, so
/// D(u) = phi'(u) = gamma*max(u, floor)^(gamma-1). Solved by damped Newton with
/// a tridiagonal Jacobian to residual 1e-14. phi is nondecreasing, so the step
/// is order-preserving and mass-conserving. Throws SolverSingular if Newton stalls.
Field fast_diffusion_step(const Field& field, double gamma, double dt,
                          double regularization = kDefaultRegularizationFloor,
                          FiniteVolumeEnds ends = FiniteVolumeEnds::ZeroFlux);

/// Sub-cycled explicit Euler for u_t = -(-Delta)^alpha (u^gamma).
/// Throws Error(ParameterOutOfRange) unless max(1 - 2 alpha, 0) < gamma <= 1.
Field fractional_fast_diffusion_step(const Field& field, double alpha, double gamma, double dt,
                                     double regularization = kDefaultRegularizationFloor);

/// Number of explicit sub-steps the fractional fast-diffusion scheme uses for dt.
std::size_t fractional_fast_diffusion_substeps(const Grid& grid, double alpha, double gamma,
                                               double dt, double regularization);

/// Dispersal substep prepared for repeated use on one grid (caches the symbol
/// and the last exponential factor). Not thread-safe; one instance per run.
class DispersalOperator {
 public:
  /// `ends` applies to the fast-diffusion finite-volume scheme only.
  DispersalOperator(DispersalSpec spec, Grid grid,
                    FiniteVolumeEnds ends = FiniteVolumeEnds::Periodic);

  const DispersalSpec& spec() const noexcept { return spec_; }
  const Grid& grid() const noexcept { return grid_; }
  const std::optional<Symbol>& symbol() const noexcept { return symbol_; }

  /// Advances u by dt in place. u is not clamped.
  void advance(Field& u, double dt);

 private:
  DispersalSpec spec_;
  Grid grid_;
  FiniteVolumeEnds ends_;
  std::optional<Symbol> symbol_;
  double cached_dt_ = -1.0;
  std::vector<double> cached_factor_;
};

}  // namespace accelfront
