#include <cmath>

#include "tc/common/errors.hpp"
#include "tc/common/parallel.hpp"
#include "tc/correlate/correlate.hpp"

namespace tc::correlate {

TripleCountResult count_triples(const multfunc::CoefficientWindow& window, std::int64_t X, std::int64_t H, double c) {
  if (X < 1 || H < 0 || c < 0.0) throw DomainError("count_triples: need X >= 1, H >= 0, c >= 0");
  const std::int64_t lo = std::max<std::int64_t>(1, X - 2 * H);
  const std::int64_t hi = 2 * X + 2 * H;
  if (window.stride_base != 1 || !window.covers(lo, hi)) {
    throw DomainError("count_triples: window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                      "] does not cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const std::int64_t base = X - 2 * H;
  std::vector<double> mag(static_cast<std::size_t>(hi - base + 1), 0.0);
  for (std::int64_t p = lo; p <= hi; ++p) mag[static_cast<std::size_t>(p - base)] = std::abs(window.at(p));

  std::vector<std::int64_t> per_shift(static_cast<std::size_t>(2 * H + 1));
  parallel_for(per_shift.size(), [&](std::size_t k) {
    const std::int64_t h = static_cast<std::int64_t>(k) - H;
    std::int64_t count = 0;
    for (std::int64_t n = X; n <= 2 * X; ++n) {
      const std::size_t i = static_cast<std::size_t>(n - base);
      const double v = mag[i] * mag[static_cast<std::size_t>(static_cast<std::int64_t>(i) + h)] *
                       mag[static_cast<std::size_t>(static_cast<std::int64_t>(i) + 2 * h)];
      if (v >= c) ++count;
    }
    per_shift[k] = count;
  });
  TripleCountResult r;
  r.c = c;
  for (const auto v : per_shift) r.count += v;
  r.normalized = static_cast<double>(r.count) / (static_cast<double>(X) * static_cast<double>(2 * H + 1));
  return r;
}

}  // namespace tc::correlate
