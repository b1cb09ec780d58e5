#include "tc/common/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <mutex>

#include "tc/common/errors.hpp"

namespace tc {

namespace {

constexpr std::size_t kNaiveThreshold = 48;

struct NttPrime {
  std::uint32_t mod;
  std::uint32_t root;
};
constexpr std::array<NttPrime, 3> kPrimes{{{998244353u, 3u}, {167772161u, 3u}, {469762049u, 3u}}};
constexpr std::size_t kMaxNttLog = 23;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void ntt(std::vector<std::uint32_t>& a, bool invert, const NttPrime& prime) {
  const std::size_t n = a.size();
  const std::uint64_t mod = prime.mod;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = powmod(prime.root, (mod - 1) / len, mod);
    if (invert) w = powmod(w, mod - 2, mod);
    const std::size_t half = len / 2;
    std::vector<std::uint32_t> tw(half);
    tw[0] = 1;
    for (std::size_t k = 1; k < half; ++k) tw[k] = static_cast<std::uint32_t>(tw[k - 1] * w % mod);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t u = a[i + k];
        const std::uint64_t v = a[i + k + half] * static_cast<std::uint64_t>(tw[k]) % mod;
        a[i + k] = static_cast<std::uint32_t>(u + v >= mod ? u + v - mod : u + v);
        a[i + k + half] = static_cast<std::uint32_t>(u >= v ? u - v : u + mod - v);
      }
    }
  }
  if (invert) {
    const std::uint64_t n_inv = powmod(n % mod, mod - 2, mod);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * n_inv % mod);
  }
}

std::vector<std::uint32_t> reduce(std::span<const std::int64_t> a, std::uint32_t mod, std::size_t n) {
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t r = a[i] % static_cast<std::int64_t>(mod);
    if (r < 0) r += mod;
    out[i] = static_cast<std::uint32_t>(r);
  }
  return out;
}

std::int64_t max_abs(std::span<const std::int64_t> a) {
  std::int64_t m = 0;
  for (auto x : a) m = std::max(m, x < 0 ? -x : x);
  return m;
}

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(std::vector<std::complex<double>>& data, int sign) {
  fftw_plan p = plan_cache().get(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

std::vector<i128> convolve_exact_naive(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<i128> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const i128 ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
  }
  return out;
}

std::vector<i128> convolve_exact(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  if (std::min(a.size(), b.size()) <= kNaiveThreshold || n > (std::size_t{1} << kMaxNttLog)) {
    return convolve_exact_naive(a, b);
  }
  const u128 modulus = static_cast<u128>(kPrimes[0].mod) * kPrimes[1].mod * kPrimes[2].mod;
  const u128 bound = static_cast<u128>(max_abs(a)) * static_cast<u128>(max_abs(b)) *
                     static_cast<u128>(std::min(a.size(), b.size()));
  if (bound >= modulus / 2) return convolve_exact_naive(a, b);

  std::array<std::vector<std::uint32_t>, 3> residues;
  for (std::size_t k = 0; k < 3; ++k) {
    auto fa = reduce(a, kPrimes[k].mod, n);
    auto fb = reduce(b, kPrimes[k].mod, n);
    ntt(fa, false, kPrimes[k]);
    ntt(fb, false, kPrimes[k]);
    for (std::size_t i = 0; i < n; ++i) {
      fa[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(fa[i]) * fb[i] % kPrimes[k].mod);
    }
    ntt(fa, true, kPrimes[k]);
    residues[k] = std::move(fa);
  }

  const std::uint64_t p1 = kPrimes[0].mod, p2 = kPrimes[1].mod, p3 = kPrimes[2].mod;
  const std::uint64_t inv_p1_mod_p2 = invmod(p1 % p2, p2);
  const std::uint64_t inv_p1p2_mod_p3 = invmod(mulmod(p1, p2, p3), p3);
  const u128 half = modulus / 2;
  std::vector<i128> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::uint64_t r1 = residues[0][i], r2 = residues[1][i], r3 = residues[2][i];
    const std::uint64_t v2 = mulmod((r2 + p2 - r1 % p2) % p2, inv_p1_mod_p2, p2);
    const std::uint64_t partial = (r1 + mulmod(v2, p1 % p3, p3)) % p3;
    const std::uint64_t v3 = mulmod((r3 + p3 - partial) % p3, inv_p1p2_mod_p3, p3);
    const u128 x = static_cast<u128>(r1) + static_cast<u128>(v2) * p1 + static_cast<u128>(v3) * p1 * p2;
    out[i] = x > half ? -static_cast<i128>(modulus - x) : static_cast<i128>(x);
  }
  return out;
}

std::vector<std::complex<double>> convolve_complex_naive(std::span<const std::complex<double>> a,
                                                         std::span<const std::complex<double>> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::complex<double>> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<std::complex<double>> convolve_complex(std::span<const std::complex<double>> a,
                                                   std::span<const std::complex<double>> b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) <= kNaiveThreshold) return convolve_complex_naive(a, b);
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<std::complex<double>> fa(n), fb(n);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  execute(fa, FFTW_FORWARD);
  execute(fb, FFTW_FORWARD);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  execute(fa, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(n);
  fa.resize(out_len);
  for (auto& z : fa) z *= scale;
  return fa;
}

void dft_inverse_kernel(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DomainError("dft_inverse_kernel: length must be a power of two");
  execute(data, FFTW_BACKWARD);
}

}  // namespace tc
