#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tc/common/arith.hpp"

namespace tc {

/// Exact linear convolution of integer sequences. Large inputs go through a
/// three-prime number-theoretic transform with Garner reconstruction; the
/// result magnitude bound is checked before the transform is trusted.
std::vector<i128> convolve_exact(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Linear convolution of complex sequences (FFTW for large inputs).
std::vector<std::complex<double>> convolve_complex(std::span<const std::complex<double>> a,
                                                   std::span<const std::complex<double>> b);

std::vector<i128> convolve_exact_naive(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b);
std::vector<std::complex<double>> convolve_complex_naive(std::span<const std::complex<double>> a,
                                                         std::span<const std::complex<double>> b);

/// In-place unnormalised DFT with kernel e(+jk/n); n must be a power of two.
/// Thin wrapper over a cached FFTW plan, safe to call from several threads.
void dft_inverse_kernel(std::vector<std::complex<double>>& data);

}  // namespace tc
