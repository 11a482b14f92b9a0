#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace accelfront::detail {

/// Unnormalized real-to-half-complex FFT of length n (output has n/2 + 1 slots).
/// Execution is thread-safe; plans are created once per length under a lock.
void fft_forward(std::span<const double> input, std::span<std::complex<double>> half_spectrum);

/// Inverse of fft_forward including the 1/n factor.
void fft_inverse(std::span<const std::complex<double>> half_spectrum, std::span<double> output);

/// Replaces `values` by the real field whose coefficients are multiplied by
/// multiplier[k] for k = 0..n/2 (an even real multiplier on the signed frequencies).
void apply_even_multiplier(std::span<double> values, std::span<const double> multiplier);

}  // namespace accelfront::detail
