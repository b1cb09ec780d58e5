#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace tc::multfunc {

/// Values f(q0 * n) for n in the closed interval [lo, hi].
/// Exact kinds additionally carry the integer values in `exact`.
struct CoefficientWindow {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  std::int64_t stride_base = 1;
  std::vector<std::complex<double>> values;
  std::vector<std::int64_t> exact;

  std::size_t size() const { return values.size(); }
  bool is_exact() const { return !exact.empty(); }
  bool covers(std::int64_t a, std::int64_t b) const { return a >= lo && b <= hi && a <= b; }

  std::complex<double> at(std::int64_t n) const { return values[static_cast<std::size_t>(n - lo)]; }
  std::int64_t exact_at(std::int64_t n) const { return exact[static_cast<std::size_t>(n - lo)]; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const;
};

}  // namespace tc::multfunc
