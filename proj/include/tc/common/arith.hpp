#pragma once

#include <cstdint>
#include <utility>
#include <string>
#include <vector>

namespace tc {

using i128 = __int128;
using u128 = unsigned __int128;

struct PrimePower {
  std::uint64_t p;
  int e;
};

using Factorization = std::vector<PrimePower>;

/// Trial division; throws ResourceError above limits().max_factor_n.
Factorization factorize(std::uint64_t n);

std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Exact binomial coefficient; the caller guarantees the result fits.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Reduces a*b/m mod 1 exactly: returns (a*b) mod m as an integer in [0, m).
std::uint64_t mul_residue(std::int64_t a, std::int64_t b, std::uint64_t m);

/// Decimal rendering of a 128-bit integer.
std::string to_string(i128 v);

}  // namespace tc
