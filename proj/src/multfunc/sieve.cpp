#include "tc/multfunc/sieve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tc/common/arith.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/limits.hpp"
#include "tc/common/parallel.hpp"
#include "tc/multfunc/tau.hpp"

namespace tc::multfunc {

namespace {

constexpr std::int64_t kSegment = std::int64_t{1} << 16;

void check_range(std::int64_t q0, std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi < lo) {
    throw DomainError("window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is not a valid range of positive integers");
  }
  if (q0 < 1) throw DomainError("progression base q0 must be >= 1");
  if (hi - lo + 1 > limits().max_window) {
    throw ResourceError("window of " + std::to_string(hi - lo + 1) + " values exceeds budget " +
                        std::to_string(limits().max_window));
  }
  if (hi > std::numeric_limits<std::int64_t>::max() / 4 / q0) {
    throw ResourceError("q0 * hi overflows the supported integer range");
  }
}

// Multiplicative sieve for n -> f(q0 n) on [lo, hi]: every prime p contributes
// rule(p, v_p(n) + v_p(q0)).
template <class V, class Rule>
std::vector<V> sieve_values(std::int64_t lo, std::int64_t hi, std::int64_t q0, const Rule& rule) {
  const auto primes = primes_up_to(isqrt(static_cast<std::uint64_t>(hi)));
  const Factorization q0_factors = factorize(static_cast<std::uint64_t>(q0));
  const std::int64_t len = hi - lo + 1;
  std::vector<V> out(static_cast<std::size_t>(len));
  const std::size_t segments = static_cast<std::size_t>((len + kSegment - 1) / kSegment);

  parallel_for(segments, [&](std::size_t s) {
    const std::int64_t seg_lo = lo + static_cast<std::int64_t>(s) * kSegment;
    const std::int64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
    const std::size_t seg_len = static_cast<std::size_t>(seg_hi - seg_lo + 1);
    std::vector<std::uint64_t> rem(seg_len);
    V* val = out.data() + (seg_lo - lo);
    for (std::size_t i = 0; i < seg_len; ++i) {
      rem[i] = static_cast<std::uint64_t>(seg_lo) + i;
      val[i] = V(1);
    }
    for (const auto& [p, v] : q0_factors) {
      for (std::size_t i = 0; i < seg_len; ++i) {
        int k = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++k;
        }
        val[i] *= rule(p, k + v);
      }
    }
    for (const std::uint32_t p32 : primes) {
      const std::uint64_t p = p32;
      if (q0 % static_cast<std::int64_t>(p) == 0) continue;
      const std::uint64_t first = (static_cast<std::uint64_t>(seg_lo) + p - 1) / p * p;
      for (std::uint64_t m = first; m <= static_cast<std::uint64_t>(seg_hi); m += p) {
        const std::size_t i = m - static_cast<std::uint64_t>(seg_lo);
        int k = 0;
        do {
          rem[i] /= p;
          ++k;
        } while (rem[i] % p == 0);
        val[i] *= rule(p, k);
      }
    }
    for (std::size_t i = 0; i < seg_len; ++i) {
      if (rem[i] > 1) val[i] *= rule(rem[i], 1);
    }
  });
  return out;
}

// lambda(p^e) with prime values read from a table snapshot and every power of
// a sieving prime (or of a prime dividing q0) precomputed.
struct TauRule {
  std::shared_ptr<const std::vector<i128>> table;
  std::vector<std::vector<long double>> small;  // indexed by p <= isqrt(hi)
  std::vector<std::pair<std::uint64_t, std::vector<long double>>> extra;

  TauRule(std::int64_t hi, std::int64_t q0, std::shared_ptr<const std::vector<i128>> t) : table(std::move(t)) {
    const auto powers = [&](std::uint64_t p) {
      int e_max = 0;
      for (std::int64_t m = q0; m % static_cast<std::int64_t>(p) == 0; m /= static_cast<std::int64_t>(p)) ++e_max;
      for (std::uint64_t pe = p; pe <= static_cast<std::uint64_t>(hi); pe *= p) ++e_max;
      std::vector<long double> v(static_cast<std::size_t>(e_max) + 1);
      for (int e = 0; e <= e_max; ++e) v[static_cast<std::size_t>(e)] = tau_normalized_prime_power(p, e);
      return v;
    };
    const std::uint64_t root = isqrt(static_cast<std::uint64_t>(hi));
    small.resize(root + 1);
    for (const auto p : primes_up_to(root)) small[p] = powers(p);
    for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(q0))) {
      (void)e;
      if (p > root) extra.emplace_back(p, powers(p));
    }
  }

  long double operator()(std::uint64_t p, int e) const {
    if (e == 0) return 1.0L;
    if (p < small.size() && !small[p].empty()) return small[p][static_cast<std::size_t>(e)];
    for (const auto& [prime, v] : extra) {
      if (prime == p) return v[static_cast<std::size_t>(e)];
    }
    if (e == 1 && p < table->size()) return normalize_tau((*table)[p], static_cast<std::int64_t>(p));
    return tau_normalized_prime_power(p, e);
  }
};

std::int64_t largest_prime_factor(std::int64_t n) {
  const auto f = factorize(static_cast<std::uint64_t>(n));
  return f.empty() ? 1 : static_cast<std::int64_t>(f.back().p);
}

CoefficientWindow make_window(std::int64_t q0, std::int64_t lo, std::int64_t hi) {
  CoefficientWindow w;
  w.lo = lo;
  w.hi = hi;
  w.stride_base = q0;
  return w;
}

CoefficientWindow sieve_impl(const MultSpec& spec, std::int64_t q0, std::int64_t lo, std::int64_t hi) {
  check_range(q0, lo, hi);
  CoefficientWindow w = make_window(q0, lo, hi);
  if (spec.is_exact()) {
    auto rule = [&spec](std::uint64_t p, int e) { return prime_power_exact(spec, p, e); };
    w.exact = sieve_values<std::int64_t>(lo, hi, q0, rule);
    w.values.resize(w.exact.size());
    for (std::size_t i = 0; i < w.exact.size(); ++i) w.values[i] = static_cast<double>(w.exact[i]);
    return w;
  }
  if (spec.kind == Kind::RamanujanTauNorm) {
    if (q0 == 1) {
      const auto table = tau_table(hi);
      w.values.resize(static_cast<std::size_t>(hi - lo + 1));
      for (std::int64_t n = lo; n <= hi; ++n) {
        w.values[static_cast<std::size_t>(n - lo)] =
            static_cast<double>(normalize_tau((*table)[static_cast<std::size_t>(n)], n));
      }
      return w;
    }
    const TauRule rule(hi, q0, tau_table(std::max(hi, largest_prime_factor(q0))));
    const auto vals = sieve_values<long double>(lo, hi, q0, rule);
    w.values.resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) w.values[i] = static_cast<double>(vals[i]);
    return w;
  }
  auto rule = [&spec](std::uint64_t p, int e) { return prime_power_value(spec, p, e); };
  w.values = sieve_values<std::complex<double>>(lo, hi, q0, rule);
  return w;
}

}  // namespace

bool CoefficientWindow::is_real() const {
  for (const auto& z : values) {
    if (z.imag() != 0.0) return false;
  }
  return true;
}

CoefficientWindow sieve_window(const MultSpec& spec, std::int64_t lo, std::int64_t hi) {
  return sieve_impl(spec, 1, lo, hi);
}

CoefficientWindow sieve_one_star_chi4(std::int64_t lo, std::int64_t hi) {
  return sieve_impl(MultSpec::one_star_chi4(), 1, lo, hi);
}

CoefficientWindow tau_normalized(std::int64_t hi) {
  if (hi < 1) throw DomainError("tau_normalized: hi must be >= 1");
  CoefficientWindow w = sieve_impl(MultSpec::tau_normalized(), 1, 1, hi);
  const CoefficientWindow d2 = sieve_impl(MultSpec::divisor(2), 1, 1, hi);
  for (std::int64_t n = 1; n <= hi; ++n) {
    const double lambda = std::abs(w.at(n));
    if (lambda > static_cast<double>(d2.exact_at(n)) * (1.0 + 1e-12)) {
      throw std::logic_error("Deligne bound violated at n = " + std::to_string(n));
    }
  }
  return w;
}

CoefficientWindow window_on_progression(const MultSpec& spec, std::int64_t q0, std::int64_t lo,
                                        std::int64_t hi) {
  return sieve_impl(spec, q0, lo, hi);
}

std::int64_t eval_exact(const MultSpec& spec, std::int64_t n) {
  if (n < 1) throw DomainError("eval_exact: n must be >= 1");
  if (!spec.is_exact()) throw SpecificationError("eval_exact: spec '" + spec.id() + "' is not integer-valued");
  std::int64_t v = 1;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(n))) v *= prime_power_exact(spec, p, e);
  return v;
}

std::complex<double> eval_at(const MultSpec& spec, std::int64_t n) {
  if (n < 1) throw DomainError("eval_at: n must be >= 1");
  if (spec.is_exact()) return static_cast<double>(eval_exact(spec, n));
  const auto factors = factorize(static_cast<std::uint64_t>(n));
  if (spec.kind == Kind::RamanujanTauNorm) {
    long double v = 1.0L;
    for (const auto& [p, e] : factors) v *= tau_normalized_prime_power(p, e);
    return static_cast<double>(v);
  }
  std::complex<double> v = 1.0;
  for (const auto& [p, e] : factors) v *= prime_power_value(spec, p, e);
  return v;
}

}  // namespace tc::multfunc
