#include "tc/multfunc/tau.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "tc/common/errors.hpp"
#include "tc/common/limits.hpp"
#include "tc/common/parallel.hpp"

namespace tc::multfunc {

namespace {

constexpr std::array<std::uint64_t, 2> kModuli{(std::uint64_t{1} << 62) - 57, (std::uint64_t{1} << 61) - 1};

struct PentagonalTerm {
  std::int64_t index;
  int sign;
};

std::vector<PentagonalTerm> pentagonal_terms(std::int64_t limit) {
  std::vector<PentagonalTerm> terms;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t g1 = k * (3 * k - 1) / 2;
    const std::int64_t g2 = k * (3 * k + 1) / 2;
    if (g1 > limit) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    terms.push_back({g1, sign});
    if (g2 <= limit) terms.push_back({g2, sign});
  }
  return terms;
}

// Coefficients of prod(1 - x^m)^24 modulo `mod`, indices 0..len-1.
// n A_n = sum_{k>=1} ((m+1) k - n) B_k A_{n-k}, with m = 24 and B the
// pentagonal series (all nonzero B_k are +-1).
std::vector<std::uint64_t> eta24_mod(std::int64_t len, std::uint64_t mod) {
  const auto terms = pentagonal_terms(len);
  std::vector<std::uint64_t> inv(static_cast<std::size_t>(len) + 1, 1);
  for (std::int64_t i = 2; i <= len; ++i) {
    const std::uint64_t ii = static_cast<std::uint64_t>(i);
    inv[ii] = mulmod(mod - mod / ii, inv[mod % ii], mod);
  }
  std::vector<std::uint64_t> a(static_cast<std::size_t>(len), 0);
  a[0] = 1;
  for (std::int64_t n = 1; n < len; ++n) {
    i128 acc = 0;
    for (const auto& t : terms) {
      if (t.index > n) break;
      const std::int64_t coeff = 25 * t.index - n;
      const i128 term = static_cast<i128>(coeff) * static_cast<i128>(a[static_cast<std::size_t>(n - t.index)]);
      acc += t.sign > 0 ? term : -term;
    }
    i128 r = acc % static_cast<i128>(mod);
    if (r < 0) r += mod;
    a[static_cast<std::size_t>(n)] = mulmod(static_cast<std::uint64_t>(r), inv[static_cast<std::size_t>(n)], mod);
  }
  return a;
}

struct TauCache {
  std::mutex mutex;
  std::shared_ptr<const std::vector<i128>> table;
};

TauCache& cache() {
  static TauCache c;
  return c;
}

}  // namespace

std::vector<i128> ramanujan_tau_series(std::int64_t hi) {
  if (hi < 1) throw DomainError("ramanujan_tau_series: hi must be >= 1");
  if (hi > limits().max_tau) {
    throw ResourceError("ramanujan_tau_series: hi = " + std::to_string(hi) + " exceeds tau budget " +
                        std::to_string(limits().max_tau));
  }
  std::array<std::vector<std::uint64_t>, 2> residues;
  parallel_for(2, [&](std::size_t i) { residues[i] = eta24_mod(hi, kModuli[i]); });

  const std::uint64_t p1 = kModuli[0], p2 = kModuli[1];
  const u128 modulus = static_cast<u128>(p1) * p2;
  const u128 half = modulus / 2;
  const std::uint64_t inv_p1 = invmod(p1 % p2, p2);
  std::vector<i128> tau(static_cast<std::size_t>(hi) + 1, 0);
  for (std::int64_t n = 1; n <= hi; ++n) {
    const std::uint64_t r1 = residues[0][static_cast<std::size_t>(n - 1)];
    const std::uint64_t r2 = residues[1][static_cast<std::size_t>(n - 1)];
    const std::uint64_t t = mulmod((r2 + p2 - r1 % p2) % p2, inv_p1, p2);
    const u128 x = static_cast<u128>(r1) + static_cast<u128>(t) * p1;
    tau[static_cast<std::size_t>(n)] = x > half ? -static_cast<i128>(modulus - x) : static_cast<i128>(x);
  }
  return tau;
}

std::shared_ptr<const std::vector<i128>> tau_table(std::int64_t hi) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  if (c.table && static_cast<std::int64_t>(c.table->size()) > hi) return c.table;
  if (hi > limits().max_tau) {
    throw ResourceError("tau table: n = " + std::to_string(hi) + " exceeds tau budget " +
                        std::to_string(limits().max_tau));
  }
  // Round up so that nearby requests reuse the table.
  std::int64_t target = std::max<std::int64_t>(hi, 4096);
  target = std::min<std::int64_t>(((target + 65535) / 65536) * 65536, limits().max_tau);
  target = std::max(target, hi);
  c.table = std::make_shared<const std::vector<i128>>(ramanujan_tau_series(target));
  return c.table;
}

i128 tau_prime_power(std::uint64_t p, int e) {
  i128 pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  if (pe > limits().max_tau) {
    throw ResourceError("tau_prime_power: p^e exceeds tau budget");
  }
  if (e == 0) return 1;
  const auto table = tau_table(static_cast<std::int64_t>(p));
  const i128 tp = (*table)[p];
  if (e == 1) return tp;
  i128 p11 = 1;
  for (int i = 0; i < 11; ++i) p11 *= p;
  i128 prev = 1, cur = tp;
  for (int j = 1; j < e; ++j) {
    const i128 next = tp * cur - p11 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

long double normalize_tau(i128 tau, std::int64_t n) {
  return static_cast<long double>(tau) / std::pow(static_cast<long double>(n), 5.5L);
}

long double tau_normalized_prime_power(std::uint64_t p, int e) {
  if (e == 0) return 1.0L;
  long double pe = 1.0L;
  for (int i = 0; i < e; ++i) pe *= static_cast<long double>(p);
  if (pe <= static_cast<long double>(limits().max_tau)) {
    return static_cast<long double>(tau_prime_power(p, e)) /
           std::pow(static_cast<long double>(p), 5.5L * e);
  }
  // Large prime powers: Hecke recursion on the normalised values.
  const auto table = tau_table(static_cast<std::int64_t>(p));
  const long double lp = normalize_tau((*table)[p], static_cast<std::int64_t>(p));
  long double prev = 1.0L, cur = lp;
  for (int j = 1; j < e; ++j) {
    const long double next = lp * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace tc::multfunc
