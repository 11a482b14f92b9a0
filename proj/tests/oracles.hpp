// Independent reference computations shared by the unit tests.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "accelfront/grid.hpp"

namespace oracle {

// c_k = (1/N) sum_j u_j exp(-2 pi i j k / N)
inline std::vector<std::complex<double>> direct_dft(const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<std::complex<double>> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += u[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    c[k] = acc / static_cast<double>(n);
  }
  return c;
}

inline accelfront::Field random_field(const accelfront::Grid& g, std::mt19937_64& rng,
                                      double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  accelfront::Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = d(rng);
  return f;
}

inline double sup_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Backward Euler for u_t = u_xx with zero-flux ends, cell-centred stencil,
// solved by Gaussian elimination without pivoting on the full band.
inline std::vector<double> implicit_heat_step(const std::vector<double>& u, double dx, double dt) {
  const std::size_t n = u.size();
  const double r = dt / (dx * dx);
  std::vector<double> lower(n, -r), diag(n, 1.0 + 2.0 * r), upper(n, -r), rhs = u;
  diag.front() = 1.0 + r;
  diag.back() = 1.0 + r;
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> out(n);
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
  return out;
}

// Explicit Euler for a constant-coefficient mode amplitude a' = m a.
inline double explicit_euler_amplitude(double m, double dt, std::size_t substeps) {
  double a = 1.0;
  const double h = dt / static_cast<double>(substeps);
  for (std::size_t s = 0; s < substeps; ++s) a += h * m * a;
  return a;
}

inline double rk4_scalar(double (*f)(double), double u, double dt, std::size_t substeps) {
  const double h = dt / static_cast<double>(substeps);
  for (std::size_t s = 0; s < substeps; ++s) {
    const double k1 = f(u);
    const double k2 = f(u + 0.5 * h * k1);
    const double k3 = f(u + 0.5 * h * k2);
    const double k4 = f(u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace oracle
