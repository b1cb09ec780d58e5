#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "doctest.h"
#include "tc/common/errors.hpp"
#include "tc/multfunc/mult_spec.hpp"
#include "tc/multfunc/sieve.hpp"
#include "tc/multfunc/tau.hpp"
#include "tc/multfunc/window_cache.hpp"
#include "tc/oracle/oracle.hpp"

using namespace tc;
using namespace tc::multfunc;

namespace {

std::vector<std::int64_t> exact_values(const CoefficientWindow& w) { return w.exact; }

std::vector<MultSpec> builtins() {
  return {MultSpec::divisor(1), MultSpec::divisor(2), MultSpec::divisor(3), MultSpec::moebius(),
          MultSpec::one_star_chi4(), MultSpec::tau_normalized()};
}

}  // namespace

TEST_SUITE("multfunc") {

TEST_CASE("sieve_window examples") {
  CHECK(exact_values(sieve_window(MultSpec::divisor(2), 12, 12)) == std::vector<std::int64_t>{6});
  CHECK(exact_values(sieve_window(MultSpec::divisor(3), 1, 1)) == std::vector<std::int64_t>{1});
  CHECK(exact_values(sieve_window(MultSpec::moebius(), 4, 6)) == std::vector<std::int64_t>{0, -1, 1});
}

TEST_CASE("sieve_one_star_chi4 examples") {
  CHECK(exact_values(sieve_one_star_chi4(1, 3)) == std::vector<std::int64_t>{1, 1, 0});
  CHECK(exact_values(sieve_one_star_chi4(25, 25)) == std::vector<std::int64_t>{3});
  CHECK(exact_values(sieve_one_star_chi4(2, 2)) == std::vector<std::int64_t>{1});
}

TEST_CASE("tau_normalized examples") {
  CHECK(tau_normalized(1).at(1).real() == 1.0);
  const auto w = tau_normalized(10);
  CHECK(w.at(2).real() == doctest::Approx(-0.5303300859).epsilon(1e-10));
  CHECK(w.at(6).real() == doctest::Approx(w.at(2).real() * w.at(3).real()).epsilon(1e-13));
}

TEST_CASE("tau series matches the naive eta product") {
  const auto naive = oracle::tau_naive(600);
  const auto fast = ramanujan_tau_series(600);
  for (std::size_t n = 1; n <= 600; ++n) CHECK(naive[n] == fast[n]);
  CHECK(fast[1] == 1);
  CHECK(fast[2] == -24);
  CHECK(fast[3] == 252);
  CHECK(fast[5] == 4830);
}

TEST_CASE("tau Hecke recursion agrees with the series") {
  const auto table = tau_table(4096);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 13u}) {
    std::uint64_t pe = p;
    for (int e = 1; pe <= 4096; ++e, pe *= p) CHECK(tau_prime_power(p, e) == (*table)[pe]);
  }
}

TEST_CASE("window_on_progression examples") {
  CHECK(exact_values(window_on_progression(MultSpec::divisor(2), 2, 1, 5)) ==
        std::vector<std::int64_t>{2, 3, 4, 4, 4});
  CHECK(exact_values(window_on_progression(MultSpec::moebius(), 4, 1, 3)) == std::vector<std::int64_t>{0, 0, 0});
  for (const auto& spec : builtins()) {
    const auto a = window_on_progression(spec, 1, 50, 400);
    const auto b = sieve_window(spec, 50, 400);
    for (std::int64_t n = 50; n <= 400; ++n) CHECK(a.at(n) == b.at(n));
  }
}

TEST_CASE("progression windows match pointwise evaluation") {
  for (const auto& spec : builtins()) {
    for (std::int64_t q0 : {2, 6, 9, 12, 35}) {
      const auto w = window_on_progression(spec, q0, 100, 700);
      for (std::int64_t n = 100; n <= 700; ++n) {
        const auto want = eval_at(spec, q0 * n);
        CHECK(std::abs(w.at(n) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("eval_at examples") {
  CHECK(eval_at(MultSpec::divisor(3), 4).real() == 6.0);
  CHECK(eval_at(MultSpec::moebius(), 1).real() == 1.0);
  CHECK(eval_at(MultSpec::one_star_chi4(), 5).real() == 2.0);
}

TEST_CASE("built-ins agree with brute force") {
  for (std::int64_t n = 1; n <= 400; ++n) {
    CHECK(eval_exact(MultSpec::divisor(2), n) == oracle::divisor_k(2, n));
    CHECK(eval_exact(MultSpec::divisor(3), n) == oracle::divisor_k(3, n));
    CHECK(eval_exact(MultSpec::moebius(), n) == oracle::moebius(n));
    CHECK(eval_exact(MultSpec::one_star_chi4(), n) == oracle::one_star_chi4(n));
  }
}

TEST_CASE("property: multiplicativity on random coprime pairs") {
  std::mt19937_64 rng(20240601);
  for (const auto& spec : builtins()) {
    int done = 0;
    while (done < 200) {
      const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 1000);
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1000);
      if (std::gcd(m, n) != 1) continue;
      ++done;
      const auto lhs = eval_at(spec, m * n);
      const auto rhs = eval_at(spec, m) * eval_at(spec, n);
      if (spec.is_exact()) {
        CHECK(lhs == rhs);
      } else {
        CHECK(std::abs(lhs - rhs) <= std::ldexp(1.0, -30) * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("property: divisor bound up to 1e5") {
  const auto d2 = sieve_window(MultSpec::divisor(2), 1, 100000);
  const auto d3 = sieve_window(MultSpec::divisor(3), 1, 100000);
  for (const auto& spec : builtins()) {
    const auto w = sieve_window(spec, 1, 100000);
    const auto& bound = spec.k_bound == 3 ? d3 : d2;
    bool ok = true;
    for (std::int64_t n = 1; n <= 100000 && ok; ++n) {
      const double b = spec.k_bound == 1 ? 1.0 : static_cast<double>(bound.exact_at(n));
      ok = std::abs(w.at(n)) <= b * (1 + 1e-12);
      if (!ok) FAIL_CHECK(spec.id() << " violates the divisor bound at " << n);
    }
    CHECK(ok);
  }
}

TEST_CASE("property: sieve and eval agree on [1, 1e4]") {
  for (const auto& spec : builtins()) {
    const auto w = sieve_window(spec, 1, 10000);
    bool ok = true;
    for (std::int64_t n = 1; n <= 10000; ++n) {
      const auto e = eval_at(spec, n);
      ok = ok && std::abs(w.at(n) - e) <= std::ldexp(1.0, -40) * std::max(1.0, std::abs(e));
    }
    CHECK_MESSAGE(ok, spec.id());
  }
}

TEST_CASE("property: hyperbola identity") {
  for (std::int64_t N : {1000, 100000}) {
    const auto w = sieve_window(MultSpec::divisor(2), 1, N);
    std::int64_t lhs = std::accumulate(w.exact.begin(), w.exact.end(), std::int64_t{0});
    std::int64_t rhs = 0;
    for (std::int64_t a = 1; a <= N; ++a) rhs += N / a;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("windows have zero imaginary parts for built-ins") {
  for (const auto& spec : builtins()) CHECK(sieve_window(spec, 1000, 3000).is_real());
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(sieve_window(MultSpec::divisor(2), 0, 5), DomainError);
  CHECK_THROWS_AS(sieve_window(MultSpec::divisor(2), 1, 1'000'000'000), ResourceError);
  EulerRule rule;
  for (int e = 1; e <= 3; ++e) rule.values[{2, e}] = 1.0;
  const auto user = MultSpec::user_euler(rule, 2, 0.0, false, "partial");
  try {
    sieve_window(user, 1, 10);
    FAIL("expected a specification error");
  } catch (const SpecificationError& e) {
    CHECK(std::string(e.what()).find("3^1") != std::string::npos);
  }
}

TEST_CASE("window cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "tc_cache_test";
  std::filesystem::remove_all(dir);
  WindowCache cache(dir);
  for (const auto& spec : {MultSpec::divisor(2), MultSpec::tau_normalized()}) {
    const auto a = cache.get(spec, 3, 10, 500);
    CHECK(std::filesystem::exists(cache.path_for(spec, 3, 10, 500)));
    const auto b = cache.get(spec, 3, 10, 500);
    CHECK(a.values == b.values);
    CHECK(a.exact == b.exact);
    const auto h = read_window_header(cache.path_for(spec, 3, 10, 500));
    CHECK(h.q0 == 3);
    CHECK(h.lo == 10);
    CHECK(h.hi == 500);
  }
  CHECK_THROWS_AS(read_window_file(cache.path_for(MultSpec::divisor(2), 3, 10, 500), MultSpec::moebius()), IoError);
  std::filesystem::remove_all(dir);
}

}
