#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tc/common/arith.hpp"

namespace tc::multfunc {

/// Exact tau(n), n = 1..hi, from the 24th power of the Euler pentagonal series
/// prod (1 - x^m). The power is formed with the J.C.P. Miller recurrence,
/// evaluated modulo two 62-bit primes and recombined by CRT; |tau(n)| stays
/// far below the combined modulus inside limits().max_tau.
std::vector<i128> ramanujan_tau_series(std::int64_t hi);

/// Process-wide cached table; grows on demand. Index 0 is unused.
std::shared_ptr<const std::vector<i128>> tau_table(std::int64_t hi);

/// tau(p^e) by the Hecke recursion in exact integers (requires p^e <= max_tau).
i128 tau_prime_power(std::uint64_t p, int e);

/// tau(p^e) / p^{11e/2}.
long double tau_normalized_prime_power(std::uint64_t p, int e);

/// tau(n) / n^{11/2}.
long double normalize_tau(i128 tau, std::int64_t n);

}  // namespace tc::multfunc
