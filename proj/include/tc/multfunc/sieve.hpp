#pragma once

#include <complex>
#include <cstdint>

#include "tc/multfunc/mult_spec.hpp"
#include "tc/multfunc/window.hpp"

namespace tc::multfunc {

/// values[i] = f(lo + i), by segmented sieving over the prime-power rule.
CoefficientWindow sieve_window(const MultSpec& spec, std::int64_t lo, std::int64_t hi);

/// f(n) = sum_{d | n} chi_4(d).
CoefficientWindow sieve_one_star_chi4(std::int64_t lo, std::int64_t hi);

/// lambda(n) = tau(n) / n^{11/2} on [1, hi]. Checks |lambda(n)| <= d(n).
CoefficientWindow tau_normalized(std::int64_t hi);

/// values[i] = f(q0 * (lo + i)).
CoefficientWindow window_on_progression(const MultSpec& spec, std::int64_t q0, std::int64_t lo,
                                        std::int64_t hi);

/// f(n) by trial-division factorization.
std::complex<double> eval_at(const MultSpec& spec, std::int64_t n);
std::int64_t eval_exact(const MultSpec& spec, std::int64_t n);

}  // namespace tc::multfunc
