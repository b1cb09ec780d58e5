#pragma once

// Deliberately naive reference implementations. Nothing here shares code with
// the sieves, the character tables or the convolution engine.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "tc/common/arith.hpp"

namespace tc::oracle {

/// Ordered k-factorizations of n, by recursion over all divisors.
std::int64_t divisor_k(int k, std::int64_t n);
int moebius(std::int64_t n);
/// sum over d | n of chi_4(d), scanning every d <= n.
std::int64_t one_star_chi4(std::int64_t n);

/// tau(1..hi) from prod (1 - x^m)^24 by plain polynomial multiplication.
std::vector<i128> tau_naive(std::int64_t hi);

/// sum_{|h|<=H} (H - |h|) sum_{X<=n<=2X} f1(n) f2(n+h) f3(n+2h), i.e. H * S(X,H).
i128 ternary_numerator(const std::function<std::int64_t(std::int64_t)>& f1,
                       const std::function<std::int64_t(std::int64_t)>& f2,
                       const std::function<std::int64_t(std::int64_t)>& f3, std::int64_t X, std::int64_t H);

/// Sum of chi(m) e(m/q) with chi given as a table indexed by m mod q.
std::complex<double> gauss_sum(const std::vector<std::complex<double>>& chi);
/// c_q(n) = sum over a mod q, gcd(a,q)=1 of cos(2 pi a n / q).
double ramanujan_sum(std::int64_t q, std::int64_t n);

/// 1 - 1/3 + 1/5 - ... over the first `terms` terms, averaged with the next
/// partial sum to cancel the leading oscillation.
double leibniz_quarter_pi(std::int64_t terms);

/// Smallest d | q such that chi(m) depends only on m mod d among units.
std::int64_t conductor(const std::vector<std::complex<double>>& chi);

}  // namespace tc::oracle
