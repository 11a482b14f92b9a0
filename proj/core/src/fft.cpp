#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace accelfront::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// FFTW's planner is not reentrant, but executing an existing plan on new
// arrays is. Plans are never destroyed; the number of distinct lengths is small.
const Plans& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> real(n);
  std::vector<std::complex<double>> half(n / 2 + 1);
  const int len = static_cast<int>(n);
  auto* cplx = reinterpret_cast<fftw_complex*>(half.data());
  Plans plans;
  plans.forward = fftw_plan_dft_r2c_1d(len, real.data(), cplx, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.inverse = fftw_plan_dft_c2r_1d(len, cplx, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, plans).first->second;
}

}  // namespace

void fft_forward(std::span<const double> input, std::span<std::complex<double>> half_spectrum) {
  const Plans& plans = plans_for(input.size());
  // r2c leaves its input intact, the const_cast is only for the C signature.
  fftw_execute_dft_r2c(plans.forward, const_cast<double*>(input.data()),
                       reinterpret_cast<fftw_complex*>(half_spectrum.data()));
}

void fft_inverse(std::span<const std::complex<double>> half_spectrum, std::span<double> output) {
  const std::size_t n = output.size();
  const Plans& plans = plans_for(n);
  // c2r destroys its input.
  std::vector<std::complex<double>> scratch(half_spectrum.begin(), half_spectrum.end());
  fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(scratch.data()),
                       output.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : output) v *= scale;
}

void apply_even_multiplier(std::span<double> values, std::span<const double> multiplier) {
  const std::size_t n = values.size();
  const Plans& plans = plans_for(n);
  std::vector<std::complex<double>> half(n / 2 + 1);
  auto* cplx = reinterpret_cast<fftw_complex*>(half.data());
  fftw_execute_dft_r2c(plans.forward, values.data(), cplx);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < half.size(); ++k) half[k] *= multiplier[k] * scale;
  fftw_execute_dft_c2r(plans.inverse, cplx, values.data());
}

}  // namespace accelfront::detail
