#include "tc/oracle/oracle.hpp"

#include <cmath>
#include <numeric>

namespace tc::oracle {

std::int64_t divisor_k(int k, std::int64_t n) {
  if (k == 1) return 1;
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) total += divisor_k(k - 1, n / d);
  }
  return total;
}

int moebius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

std::int64_t one_star_chi4(std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    if (d % 4 == 1) ++total;
    if (d % 4 == 3) --total;
  }
  return total;
}

std::vector<i128> tau_naive(std::int64_t hi) {
  const std::size_t len = static_cast<std::size_t>(hi);  // coefficients of x^0..x^{hi-1}
  std::vector<i128> eta(len, 0);
  eta[0] = 1;
  for (std::size_t m = 1; m < len; ++m) {
    for (std::size_t i = len - 1; i >= m; --i) eta[i] -= eta[i - m];
  }
  std::vector<i128> acc(len, 0);
  acc[0] = 1;
  for (int rep = 0; rep < 24; ++rep) {
    std::vector<i128> next(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      if (acc[i] == 0) continue;
      for (std::size_t j = 0; i + j < len; ++j) next[i + j] += acc[i] * eta[j];
    }
    acc.swap(next);
  }
  std::vector<i128> tau(len + 1, 0);
  for (std::size_t n = 1; n <= len; ++n) tau[n] = acc[n - 1];
  return tau;
}

i128 ternary_numerator(const std::function<std::int64_t(std::int64_t)>& f1,
                       const std::function<std::int64_t(std::int64_t)>& f2,
                       const std::function<std::int64_t(std::int64_t)>& f3, std::int64_t X, std::int64_t H) {
  i128 total = 0;
  for (std::int64_t h = -H; h <= H; ++h) {
    const std::int64_t w = H - (h < 0 ? -h : h);
    for (std::int64_t n = X; n <= 2 * X; ++n) {
      total += static_cast<i128>(w) * f1(n) * f2(n + h) * f3(n + 2 * h);
    }
  }
  return total;
}

std::complex<double> gauss_sum(const std::vector<std::complex<double>>& chi) {
  const auto q = static_cast<std::int64_t>(chi.size());
  std::complex<long double> total = 0;
  for (std::int64_t m = 1; m <= q; ++m) {
    const long double t = 2.0L * 3.14159265358979323846264338327950288L * static_cast<long double>(m) /
                          static_cast<long double>(q);
    const std::complex<long double> c(chi[static_cast<std::size_t>(m % q)].real(),
                                      chi[static_cast<std::size_t>(m % q)].imag());
    total += c * std::complex<long double>(std::cos(t), std::sin(t));
  }
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

double ramanujan_sum(std::int64_t q, std::int64_t n) {
  long double total = 0;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    total += std::cos(2.0L * 3.14159265358979323846264338327950288L * static_cast<long double>((a * n) % q) /
                      static_cast<long double>(q));
  }
  return static_cast<double>(total);
}

double leibniz_quarter_pi(std::int64_t terms) {
  long double s = 0;
  for (std::int64_t j = terms - 1; j >= 0; --j) s += (j % 2 == 0 ? 1.0L : -1.0L) / (2.0L * j + 1.0L);
  const long double next = s + (terms % 2 == 0 ? 1.0L : -1.0L) / (2.0L * terms + 1.0L);
  return static_cast<double>((s + next) / 2.0L);
}

std::int64_t conductor(const std::vector<std::complex<double>>& chi) {
  const auto q = static_cast<std::int64_t>(chi.size());
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    bool ok = true;
    for (std::int64_t m = 1; m < q && ok; ++m) {
      if (std::gcd(m, q) != 1) continue;
      for (std::int64_t m2 = m + d; m2 < q + m && ok; m2 += d) {
        const std::int64_t r = m2 % q;
        if (std::gcd(r, q) != 1) continue;
        if (std::abs(chi[static_cast<std::size_t>(m)] - chi[static_cast<std::size_t>(r)]) > 1e-9) ok = false;
      }
    }
    if (ok) return d;
  }
  return q;
}

}  // namespace tc::oracle
