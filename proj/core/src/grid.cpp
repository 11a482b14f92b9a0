#include "accelfront/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "accelfront/error.hpp"
#include "fft.hpp"

namespace accelfront {

Grid::Grid(double half_length, std::size_t n_points)
    : half_length_(half_length), n_points_(n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw Error(ErrorKind::NonPositiveLength, "half length must be positive, got " +
                                                  std::to_string(half_length));
  }
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw Error(ErrorKind::NotPowerOfTwo,
                "node count must be a power of two >= 8, got " + std::to_string(n_points));
  }
}

Grid make_grid(double half_length, std::size_t n_points) { return Grid(half_length, n_points); }

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) x[i] = node(i);
  return x;
}

long Grid::signed_index(std::size_t k) const noexcept {
  const auto n = static_cast<long>(n_points_);
  const auto kk = static_cast<long>(k);
  return kk <= n / 2 ? kk : kk - n;
}

double Grid::frequency(std::size_t k) const noexcept {
  return std::numbers::pi * static_cast<double>(signed_index(k)) / half_length_;
}

double Grid::max_frequency() const noexcept {
  return std::numbers::pi * static_cast<double>(n_points_ / 2) / half_length_;
}

std::size_t Grid::nearest_index(double x) const noexcept {
  const double r = std::round((x + half_length_) / dx());
  if (r <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(r), n_points_ - 1);
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::LengthMismatch, "field has " + std::to_string(values_.size()) +
                                               " values for a grid of " +
                                               std::to_string(grid_.size()) + " nodes");
  }
}

double Field::mean() const noexcept {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

double Field::clamp() noexcept {
  double moved = 0.0;
  for (double& v : values_) {
    const double c = std::clamp(v, 0.0, 1.0);
    moved = std::max(moved, std::abs(c - v));
    v = c;
  }
  return moved;
}

Spectrum forward_transform(const Field& field) {
  const Grid& grid = field.grid();
  const std::size_t n = grid.size();
  if (field.size() != n) throw Error(ErrorKind::LengthMismatch, "field/grid size mismatch");

  std::vector<std::complex<double>> half(n / 2 + 1);
  detail::fft_forward(field.values(), half);

  Spectrum spectrum{grid, std::vector<std::complex<double>>(n)};
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) spectrum.coefficients[k] = half[k] * scale;
  for (std::size_t k = n / 2 + 1; k < n; ++k) {
    spectrum.coefficients[k] = std::conj(spectrum.coefficients[n - k]);
  }
  return spectrum;
}

std::vector<double> inverse_transform(const Spectrum& spectrum, const Grid& grid) {
  const std::size_t n = grid.size();
  if (spectrum.coefficients.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "spectrum/grid size mismatch");
  }
  // Symmetrize so that a non-Hermitian input still yields the real part of the
  // full inverse sum.
  std::vector<std::complex<double>> half(n / 2 + 1);
  const auto& c = spectrum.coefficients;
  half[0] = {c[0].real(), 0.0};
  half[n / 2] = {c[n / 2].real(), 0.0};
  for (std::size_t k = 1; k < n / 2; ++k) half[k] = 0.5 * (c[k] + std::conj(c[n - k]));
  std::vector<double> out(n);
  detail::fft_inverse(half, out);
  // fft_inverse divides by n; coefficients are already mean-normalized.
  for (double& v : out) v *= static_cast<double>(n);
  return out;
}

}  // namespace accelfront
