#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace accelfront {

/// Uniform periodic mesh on [-L, L) with a power-of-two node count.
///
/// Nodes are x_i = -L + i*dx. Frequency slot k of a transform corresponds to
/// the signed index k~ in (-N/2, N/2] and the angular frequency pi*k~/L.
class Grid {
 public:
  /// Throws Error(NonPositiveLength) or Error(NotPowerOfTwo); N must be >= 8.
  Grid(double half_length, std::size_t n_points);

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return n_points_; }
  double dx() const noexcept { return 2.0 * half_length_ / static_cast<double>(n_points_); }

  double node(std::size_t i) const noexcept {
    return -half_length_ + static_cast<double>(i) * dx();
  }
  std::vector<double> nodes() const;

  long signed_index(std::size_t k) const noexcept;
  double frequency(std::size_t k) const noexcept;
  /// Largest |frequency| on the grid (the Nyquist frequency).
  double max_frequency() const noexcept;

  /// Index of the node nearest to x, clamped to the grid.
  std::size_t nearest_index(double x) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double half_length_;
  std::size_t n_points_;
};

Grid make_grid(double half_length, std::size_t n_points);

/// Density samples u_i on a grid. Values are expected in [0, 1] after clamp().
class Field {
 public:
  explicit Field(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}
  /// Throws Error(LengthMismatch) when values.size() != grid.size().
  Field(Grid grid, std::vector<double> values);

  template <class Fn>
  static Field from_function(const Grid& grid, Fn&& fn) {
    Field field(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) field.values_[i] = fn(grid.node(i));
    return field;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::vector<double>& storage() noexcept { return values_; }

  double mean() const noexcept;

  /// Projects every value onto [0, 1]; returns the largest distance moved.
  double clamp() noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Complex Fourier coefficients in standard FFT slot order; c_0 is the field mean.
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> coefficients;
};

/// Throws Error(LengthMismatch) if the field does not match its grid.
Spectrum forward_transform(const Field& field);

/// Real samples (imaginary residue is discarded), not clamped.
/// Throws Error(LengthMismatch) if the spectrum does not match the grid.
std::vector<double> inverse_transform(const Spectrum& spectrum, const Grid& grid);

}  // namespace accelfront
