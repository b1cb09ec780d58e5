#include <cmath>
#include <numbers>
#include <numeric>

#include "tc/arcs/arcs.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/phase.hpp"
#include "tc/common/summation.hpp"
#include "tc/multfunc/sieve.hpp"

namespace tc::arcs {

namespace {

constexpr std::int64_t kResync = std::int64_t{1} << 14;

}  // namespace

ExpSumSample short_exp_sum(const multfunc::CoefficientWindow& window, std::int64_t x, std::int64_t L, double alpha) {
  if (L < 0 || window.stride_base != 1 || !window.covers(x, x + L)) {
    throw DomainError("short_exp_sum: window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                      "] does not cover [" + std::to_string(x) + ", " + std::to_string(x + L) + "]");
  }
  const auto step_d = phase_at(1, alpha);
  const std::complex<long double> step(step_d.real(), step_d.imag());
  CompensatedComplexSum sum;
  CompensatedSum trivial;
  std::complex<long double> ph;
  for (std::int64_t j = 0; j <= L; ++j) {
    if (j % kResync == 0) {
      const auto p = phase_at(x + j, alpha);
      ph = {p.real(), p.imag()};
    }
    const auto f = window.at(x + j);
    sum.add(f * std::complex<double>(static_cast<double>(ph.real()), static_cast<double>(ph.imag())));
    trivial.add(std::abs(f));
    ph *= step;
  }
  return {x, alpha, sum.value(), trivial.value()};
}

MajorArcModel major_arc_model(const multfunc::CoefficientWindow& window, std::complex<double> C_q, std::int64_t q,
                              std::int64_t a, double gamma, std::int64_t x, std::int64_t H) {
  if (q < 1 || std::gcd(a, q) != 1) {
    throw DomainError("major_arc_model: need gcd(a, q) = 1 (a = " + std::to_string(a) + ", q = " +
                      std::to_string(q) + ")");
  }
  // integral of e(gamma y) over [x, x + 2H] = 2H e(gamma (x + H)) sinc(2 gamma H)
  const double z = 2.0 * gamma * static_cast<double>(H);
  const double sinc = z == 0.0 ? 1.0 : std::sin(std::numbers::pi * z) / (std::numbers::pi * z);
  const long double centre =
      static_cast<long double>(gamma) * static_cast<long double>(x + H);  // e(.) reduces mod 1 itself
  MajorArcModel m;
  m.model = C_q * 2.0 * static_cast<double>(H) * sinc * unit_phase(centre);
  const long double alpha = static_cast<long double>(a) / static_cast<long double>(q) + gamma;
  m.actual = short_exp_sum(window, x, 2 * H, static_cast<double>(alpha)).value;
  m.residual = std::abs(m.actual - m.model);
  return m;
}

MajorArcModel major_arc_model(const multfunc::MultSpec& spec, std::complex<double> C_q, std::int64_t q,
                              std::int64_t a, double gamma, std::int64_t x, std::int64_t H) {
  if (x < 1 || H < 1) throw DomainError("major_arc_model: need x >= 1 and H >= 1");
  const auto w = multfunc::sieve_window(spec, x, x + 2 * H);
  return major_arc_model(w, C_q, q, a, gamma, x, H);
}

}  // namespace tc::arcs
