#include "tc/common/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "tc/common/errors.hpp"
#include "tc/common/limits.hpp"

namespace tc {

namespace {
Limits& mutable_limits() {
  static Limits instance;
  return instance;
}
}  // namespace

const Limits& limits() { return mutable_limits(); }
void set_limits(const Limits& l) { mutable_limits() = l; }

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > static_cast<std::uint64_t>(limits().max_factor_n)) {
    throw ResourceError("factorize: n = " + std::to_string(n) + " exceeds trial-division bound " +
                        std::to_string(limits().max_factor_n));
  }
  Factorization out;
  auto strip = [&](std::uint64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (std::uint64_t p = 5; p * p <= n; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

int moebius(std::uint64_t n) {
  int mu = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    const i128 q = r / new_r;
    std::tie(t, new_t) = std::pair<i128, i128>{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair<i128, i128>{new_r, r - q * new_r};
  }
  if (r != 1) throw DomainError("invmod: argument not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  i128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::int64_t>(r);
}

std::uint64_t mul_residue(std::int64_t a, std::int64_t b, std::uint64_t m) {
  i128 r = static_cast<i128>(a) * b % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace tc
