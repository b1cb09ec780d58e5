#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace tc {

/// e(t) = exp(2 pi i t).
inline std::complex<double> unit_phase(long double t) {
  t -= std::floor(t);
  const long double angle = 2.0L * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

/// e(num / den) with the fraction reduced exactly before evaluation.
inline std::complex<double> unit_phase_rational(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return unit_phase(static_cast<long double>(r) / static_cast<long double>(den));
}

/// Fractional part of n * alpha, with the rounding error of the product recovered.
inline long double frac_product(std::int64_t n, double alpha) {
  const double nd = static_cast<double>(n);
  const double p = nd * alpha;
  const double err = std::fma(nd, alpha, -p);
  const double fl = std::floor(p);
  long double t = static_cast<long double>(p - fl) + static_cast<long double>(err);
  t -= std::floor(t);
  return t;
}

/// e(n * alpha) accurate to a few ulps regardless of the size of n.
inline std::complex<double> phase_at(std::int64_t n, double alpha) {
  return unit_phase(frac_product(n, alpha));
}

}  // namespace tc
