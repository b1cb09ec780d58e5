#include <cmath>
#include <random>

#include "doctest.h"
#include "tc/common/errors.hpp"
#include "tc/correlate/correlate.hpp"
#include "tc/multfunc/sieve.hpp"
#include "tc/oracle/oracle.hpp"

using namespace tc;
using namespace tc::correlate;
using multfunc::MultSpec;

namespace {

CorrelationRequest request(const MultSpec& a, const MultSpec& b, const MultSpec& c, std::int64_t X, std::int64_t H) {
  CorrelationRequest r{a, b, c, X, H, Weight::Fejer};
  return r;
}

std::function<std::int64_t(std::int64_t)> brute(const MultSpec& s) {
  return [s](std::int64_t n) -> std::int64_t {
    if (n < 1) return 0;
    switch (s.kind) {
      case multfunc::Kind::DivisorK: return oracle::divisor_k(s.k, n);
      case multfunc::Kind::Moebius: return oracle::moebius(n);
      default: return oracle::one_star_chi4(n);
    }
  };
}

const MultSpec kExact[] = {MultSpec::divisor(1), MultSpec::divisor(2), MultSpec::divisor(3), MultSpec::moebius(),
                           MultSpec::one_star_chi4()};

}  // namespace

TEST_SUITE("correlate") {

TEST_CASE("ternary_direct examples") {
  const auto one = MultSpec::divisor(1);
  const auto r = ternary_direct(request(one, one, one, 100, 10));
  REQUIRE(r.exact_numerator);
  CHECK(*r.exact_numerator == 10 * 1010);
  CHECK(r.value.real() == 1010.0);

  auto in = load_windows(request(one, one, one, 50, 5));
  for (auto& v : in.f2.values) v = 0.0;
  for (auto& v : in.f2.exact) v = 0;
  CHECK(ternary_direct(in).value == std::complex<double>(0.0));
  CHECK(ternary_convolution(in).value == std::complex<double>(0.0));

  const auto d2 = MultSpec::divisor(2);
  const auto rd = ternary_direct(request(d2, d2, d2, 10, 2));
  CHECK(*rd.exact_numerator == oracle::ternary_numerator(brute(d2), brute(d2), brute(d2), 10, 2));
}

TEST_CASE("ternary_convolution examples") {
  const auto one = MultSpec::divisor(1);
  CHECK(ternary_convolution(request(one, one, one, 100, 10)).value.real() == 1010.0);
  const auto d2 = MultSpec::divisor(2);
  const auto in = load_windows(request(d2, MultSpec::one_star_chi4(), d2, 300, 1));
  i128 diag = 0;
  for (std::int64_t n = 300; n <= 600; ++n) diag += in.f1.exact_at(n) * in.f2.exact_at(n) * in.f3.exact_at(n);
  CHECK(*ternary_convolution(in).exact_numerator == diag);
  CHECK(*ternary_direct(in).exact_numerator == diag);
}

TEST_CASE("direct path matches the brute-force triple loop") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 8; ++t) {
    const auto& a = kExact[rng() % 5];
    const auto& b = kExact[rng() % 5];
    const auto& c = kExact[rng() % 5];
    const std::int64_t X = 5 + static_cast<std::int64_t>(rng() % 60);
    const std::int64_t H = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(X));
    const auto r = ternary_direct(request(a, b, c, X, H));
    CHECK(*r.exact_numerator == oracle::ternary_numerator(brute(a), brute(b), brute(c), X, H));
  }
}

TEST_CASE("property: direct and convolution agree exactly") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t) {
    const auto& a = kExact[rng() % 5];
    const auto& b = kExact[rng() % 5];
    const auto& c = kExact[rng() % 5];
    const std::int64_t X = 50 + static_cast<std::int64_t>(rng() % 1951);
    const std::int64_t H = 1 + static_cast<std::int64_t>(rng() % 50);
    const auto in = load_windows(request(a, b, c, X, H));
    CHECK(*ternary_direct(in).exact_numerator == *ternary_convolution(in).exact_numerator);
  }
}

TEST_CASE("floating direct and convolution agree") {
  const auto lam = MultSpec::tau_normalized();
  for (auto [X, H] : {std::pair<std::int64_t, std::int64_t>{3000, 40}, {20000, 700}, {5000, 5000}}) {
    const auto in = load_windows(request(lam, lam, lam, X, H));
    const auto d = ternary_direct(in).value;
    const auto c = ternary_convolution(in).value;
    CHECK(std::abs(d - c) <= 1e-8 * std::abs(d));
    CHECK(std::abs(d.imag()) <= 1e-6 * std::abs(d) + 1e-6);
  }
  const auto mixed = load_windows(request(lam, MultSpec::divisor(2), MultSpec::moebius(), 4000, 300));
  const auto d = ternary_direct(mixed).value;
  CHECK(std::abs(d - ternary_convolution(mixed).value) <= 1e-8 * std::abs(d));
}

TEST_CASE("property: reversed summation order") {
  const auto lam = MultSpec::tau_normalized();
  const auto in = load_windows(request(lam, lam, lam, 20000, 300));
  const auto f = ternary_direct(in, false).value;
  const auto b = ternary_direct(in, true).value;
  CHECK(std::abs(f - b) <= 1e-9 * std::abs(f));
}

TEST_CASE("property: reflection symmetry") {
  // S with (f1, f3) swapped equals S on the reflected configuration; for f1 = f3
  // and real values the result is real.
  const auto d2 = MultSpec::divisor(2);
  const auto mu = MultSpec::moebius();
  const std::int64_t X = 400, H = 30;
  const auto fwd = oracle::ternary_numerator(brute(d2), brute(mu), brute(MultSpec::one_star_chi4()), X, H);
  // Reflect n -> 2X + 2H... via n' = n + 2h: the sum over (n, h) equals the sum
  // over (n', -h) with f1 and f3 exchanged and n' in [X + 2h, 2X + 2h].
  i128 refl = 0;
  const auto f1 = brute(d2), f2 = brute(mu), f3 = brute(MultSpec::one_star_chi4());
  for (std::int64_t h = -H; h <= H; ++h) {
    for (std::int64_t m = X + 2 * h; m <= 2 * X + 2 * h; ++m) {
      refl += static_cast<i128>(H - std::abs(h)) * f3(m) * f2(m - h) * f1(m - 2 * h);
    }
  }
  CHECK(fwd == refl);
  const auto lam = MultSpec::tau_normalized();
  const auto v = ternary_direct(request(lam, d2, lam, 3000, 100)).value;
  CHECK(v.imag() == 0.0);
}

TEST_CASE("fejer_overlap_weight") {
  CHECK(fejer_overlap_weight(0, 7) == 14.0);
  CHECK(fejer_overlap_weight(7, 7) == 0.0);
  CHECK(fejer_overlap_weight(5, 10) == 10.0);
  CHECK(fejer_overlap_weight(-5, 10) == 10.0);
  CHECK_THROWS_AS(fejer_overlap_weight(11, 10), DomainError);
}

TEST_CASE("property: Fejer weight identity in rational arithmetic") {
  for (std::int64_t H = 1; H <= 100; ++H) {
    for (std::int64_t h = -H; h <= H; ++h) {
      // w / (2H) == 1 - |h|/H  <=>  w * H == (H - |h|) * 2H
      const auto w = static_cast<std::int64_t>(fejer_overlap_weight(h, H));
      CHECK(w * H == (H - std::abs(h)) * 2 * H);
    }
  }
}

TEST_CASE("compare_to_main_term") {
  const auto one = MultSpec::divisor(1);
  const auto series = dirichlet::singular_series_sum(one, 10, 100000);
  const auto r = compare_to_main_term(ternary_direct(request(one, one, one, 1000, 20)), series, 1000, 20);
  CHECK(*r.main_term == doctest::Approx(1000.0 * 20.0).epsilon(1e-8));
  CHECK(*r.relative_gap == doctest::Approx(1.0 / 1000).epsilon(1e-5));
  const auto lam = MultSpec::tau_normalized();
  const auto rt = compare_to_main_term(ternary_convolution(request(lam, lam, lam, 2000, 100)),
                                       dirichlet::singular_series_sum(lam, 4, 10000), 2000, 100);
  CHECK(*rt.main_term == 0.0);
  CHECK(rt.smallness_ratio.has_value());
  CHECK_FALSE(rt.relative_gap.has_value());
  CHECK_THROWS_AS(compare_to_main_term(ternary_direct(request(one, one, one, 100, 5)),
                                       dirichlet::singular_series_sum(lam, 4, 10000), 100, 5),
                  DomainError);
}

TEST_CASE("count_triples examples") {
  const auto ones = multfunc::sieve_window(MultSpec::divisor(1), 1, 3000);
  const auto r = count_triples(ones, 1000, 50, 0.0);
  CHECK(r.count == 1001 * 101);
  const auto d2 = multfunc::sieve_window(MultSpec::divisor(2), 1, 30000);
  CHECK(count_triples(d2, 10000, 100, 1e9).count == 0);
  CHECK_THROWS_AS(count_triples(d2, 20000, 100, 1.0), DomainError);
}

TEST_CASE("count_triples matches a direct count") {
  const auto w = multfunc::sieve_window(MultSpec::tau_normalized(), 1, 2000);
  const std::int64_t X = 500, H = 40;
  const double c = 0.05;
  std::int64_t want = 0;
  for (std::int64_t h = -H; h <= H; ++h) {
    for (std::int64_t n = X; n <= 2 * X; ++n) {
      if (std::abs(w.at(n) * w.at(n + h) * w.at(n + 2 * h)) >= c) ++want;
    }
  }
  CHECK(count_triples(w, X, H, c).count == want);
}

TEST_CASE("property: count_triples is nonincreasing in c") {
  const auto w = multfunc::sieve_window(MultSpec::tau_normalized(), 1, 10000);
  std::int64_t prev = -1;
  for (int i = 0; i < 10; ++i) {
    const double c = i == 0 ? 0.0 : std::pow(10.0, -4 + 0.5 * i);
    const auto r = count_triples(w, 3000, 200, c);
    if (prev >= 0) CHECK(r.count <= prev);
    prev = r.count;
  }
}

}
