#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tc/arcs/arcs.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/phase.hpp"
#include "tc/multfunc/sieve.hpp"

using namespace tc;
using namespace tc::arcs;
using multfunc::MultSpec;

TEST_SUITE("arcs") {

TEST_CASE("decompose examples") {
  const auto d = decompose(2, 10000, 0.05);
  REQUIRE(d.major.size() == 1);
  CHECK(d.major[0].q == 1);
  CHECK(d.major[0].center == 1.0);
  CHECK(d.domain_lo() == 0.5);
  CHECK(d.domain_hi() == 1.5);
  // 1000^{-0.6} = 10^{-1.8}; at this radius Q = 10 already has overlapping arcs.
  CHECK(arc_radius(1000, 0.05) == doctest::Approx(1.5849e-2).epsilon(1e-4));
  CHECK_THROWS_AS(decompose(10, 1000, 0.05), ConfigError);
  CHECK(decompose(5, 1000, 0.05).beta == doctest::Approx(1.5849e-2).epsilon(1e-4));
  CHECK_THROWS_AS(decompose(10000, 100, 0.05), ConfigError);
}

TEST_CASE("decompose enumerates reduced fractions") {
  const auto d = decompose(8, 100000, 0.05);
  std::size_t expected = 0;
  for (std::int64_t q = 1; q < 8; ++q) {
    for (std::int64_t a = 1; a <= q; ++a) expected += std::gcd(a, q) == 1;
  }
  CHECK(d.major.size() == expected);
  for (std::size_t i = 0; i < d.major.size(); ++i) {
    CHECK(std::gcd(d.major[i].a, d.major[i].q) == 1);
    CHECK(d.major[i].q < 8);
    if (i > 0) CHECK(d.major[i].center > d.major[i - 1].center);
  }
}

TEST_CASE("max_disjoint_Q is the boundary") {
  for (std::int64_t H : {100, 1000, 3000, 10000, 100000}) {
    const auto Q = max_disjoint_Q(H, 0.05);
    CHECK_NOTHROW(decompose(Q, H, 0.05));
    CHECK_THROWS_AS(decompose(Q + 1, H, 0.05), ConfigError);
  }
}

TEST_CASE("nearest_fraction") {
  const auto nf = nearest_fraction(10, 1.0 / 3.0 + 1e-4);
  CHECK(nf.a == 1);
  CHECK(nf.q == 3);
  CHECK(nf.gamma == doctest::Approx(1e-4));
  const auto z = nearest_fraction(10, 0.999);
  CHECK(z.q == 1);
  CHECK(z.a == 1);
  CHECK(z.gamma == doctest::Approx(-1e-3));
}

TEST_CASE("short_exp_sum examples") {
  const auto ones = multfunc::sieve_window(MultSpec::divisor(1), 1, 5000);
  CHECK(short_exp_sum(ones, 100, 200, 0.0).value.real() == doctest::Approx(201.0));
  CHECK(std::abs(short_exp_sum(ones, 100, 199, 0.5).value) <= 1e-10);
  const auto mu = multfunc::sieve_window(MultSpec::moebius(), 1, 10);
  std::complex<double> want;
  for (std::int64_t n = 1; n <= 10; ++n) want += mu.at(n) * unit_phase_rational(n, 3);
  CHECK(std::abs(short_exp_sum(mu, 1, 9, 1.0 / 3.0).value - want) <= 1e-12);
  CHECK_THROWS_AS(short_exp_sum(mu, 5, 9, 0.1), DomainError);
}

TEST_CASE("short_exp_sum accuracy over a long window") {
  const auto w = multfunc::sieve_window(MultSpec::tau_normalized(), 1, 120000);
  const double alpha = 0.1234567891234;
  std::complex<long double> want;
  for (std::int64_t n = 50000; n <= 110000; ++n) {
    const auto p = phase_at(n, alpha);
    want += std::complex<long double>(w.at(n).real()) * std::complex<long double>(p.real(), p.imag());
  }
  const auto got = short_exp_sum(w, 50000, 60000, alpha);
  CHECK(std::abs(std::complex<double>(static_cast<double>(want.real()), static_cast<double>(want.imag())) - got.value) <=
        60000 * std::ldexp(1.0, -40) * 2.0);
}

TEST_CASE("property: trivial bound, periodicity and conjugation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (const auto& spec : {MultSpec::divisor(2), MultSpec::moebius(), MultSpec::one_star_chi4(),
                           MultSpec::tau_normalized()}) {
    const auto w = multfunc::sieve_window(spec, 1000, 5000);
    for (int t = 0; t < 25; ++t) {
      const double alpha = U(rng);
      const auto s = short_exp_sum(w, 1500, 3000, alpha);
      CHECK(std::abs(s.value) <= s.trivial_bound * (1 + 1e-9));
      const auto s1 = short_exp_sum(w, 1500, 3000, alpha + 1.0);
      CHECK(std::abs(s1.value - s.value) <= 1e-9 * std::max(1.0, std::abs(s.value)));
      const auto sm = short_exp_sum(w, 1500, 3000, -alpha);
      CHECK(std::abs(sm.value - std::conj(s.value)) <= 1e-9 * std::max(1.0, std::abs(s.value)));
    }
  }
}

TEST_CASE("theorem_bound examples") {
  const auto b = theorem_bound(1, 1e-3, 1e5, 3000, 0.65, 1, 0.0);
  CHECK(b.value == doctest::Approx(std::sqrt(100.0) * std::sqrt(3000.0) + std::pow(3000.0, 0.65)));
  CHECK(b.value == doctest::Approx(729.8).epsilon(2e-4));
  CHECK(theorem_bound(3, 0.0, 1e5, 3000, 0.65, 2, 0.05).value ==
        doctest::Approx(std::pow(3000.0, 0.65) * std::pow(std::log(1e5), 3.0)));
  const auto e = theorem_bound(2, 1e-3, std::numbers::e, 400, 0.6, 2, 0.05);
  CHECK(e.value == doctest::Approx(std::pow(2e-3 * std::numbers::e, 0.5025) * 20.0 + std::pow(400.0, 0.6)));
  CHECK(theorem_bound(1, 0.5, 1e5, 1e4, 0.65, 1, 0.05).regime);
  CHECK_FALSE(theorem_bound(1, 1e-6, 1e5, 1e4, 0.65, 1, 0.05).regime);
}

TEST_CASE("sup_scan: constant function") {
  const std::int64_t x = 20000, L = 2000;
  const auto ones = multfunc::sieve_window(MultSpec::divisor(1), x, x + L);
  const auto dec = decompose(2, L / 2, 0.05);
  const auto major = sup_scan(ones, dec, x, L, ArcKind::Major, 0.65, 1, 0.05);
  CHECK(major.sup_abs == doctest::Approx(static_cast<double>(L + 1)).epsilon(1e-12));
  CHECK(std::fabs(major.argmax_alpha - 1.0) < 1e-12);
  const auto minor = sup_scan(ones, dec, x, L, ArcKind::Minor, 0.65, 1, 0.05);
  CHECK(minor.sup_abs <= geometric_envelope(dec.beta));
  CHECK(minor.ratio >= 0.0);
  for (std::size_t i = 1; i < minor.round_sups.size(); ++i) CHECK(minor.round_sups[i] >= minor.round_sups[i - 1]);
  CHECK(minor.sup_abs <= minor.trivial_bound);
}

TEST_CASE("sup_scan matches a brute-force grid maximum") {
  const std::int64_t x = 3000, L = 300;
  const auto w = multfunc::sieve_window(MultSpec::one_star_chi4(), x, x + L);
  const auto dec = decompose(4, 150, 0.05);
  const auto rep = sup_scan(w, dec, x, L, ArcKind::Minor, 0.65, 2, 0.05);
  double brute = 0.0;
  const std::int64_t M = 1 << 18;
  for (std::int64_t j = 0; j < M; ++j) {
    const double alpha = static_cast<double>(j) / M;
    if (in_major(dec, alpha)) continue;
    brute = std::max(brute, std::abs(short_exp_sum(w, x, L, alpha).value));
  }
  CHECK(rep.sup_abs >= brute - 1e-9 * brute);
  CHECK(rep.sup_abs <= brute + 1e-2 * rep.trivial_bound);
  CHECK_FALSE(in_major(dec, rep.argmax_alpha));
}

TEST_CASE("sup_scan errors") {
  const auto ones = multfunc::sieve_window(MultSpec::divisor(1), 1, 100);
  CHECK_THROWS_AS(sup_scan(ones, decompose(2, 10, 0.05), 1, 500, ArcKind::Minor, 0.65, 1, 0.05), DomainError);
  ArcDecomposition wide = decompose(2, 10, 0.05);
  wide.beta = 0.6;
  CHECK_THROWS_AS(sup_scan(ones, wide, 1, 50, ArcKind::Minor, 0.65, 1, 0.05), ConfigError);
}

TEST_CASE("major_arc_model examples") {
  const std::int64_t x = 1000, H = 100;
  const auto one = MultSpec::divisor(1);
  const auto m1 = major_arc_model(one, 1.0, 1, 1, 0.0, x, H);
  CHECK(m1.model.real() == doctest::Approx(2.0 * H));
  CHECK(m1.actual.real() == doctest::Approx(2.0 * H + 1));
  CHECK(m1.residual == doctest::Approx(1.0));
  const auto m2 = major_arc_model(one, 0.0, 2, 1, 0.0, x, H);
  CHECK(m2.model == std::complex<double>(0.0));
  CHECK(m2.residual <= 1.0 + 1e-9);
  CHECK_THROWS_AS(major_arc_model(one, 0.0, 4, 2, 0.0, x, H), DomainError);
}

TEST_CASE("major_arc_model integral in closed form") {
  // The closed form against a fine midpoint rule.
  const std::int64_t x = 5000, H = 200;
  const double gamma = 3.7e-4;
  const auto w = multfunc::sieve_window(MultSpec::divisor(1), x, x + 2 * H);
  const auto m = major_arc_model(w, 1.0, 1, 1, gamma, x, H);
  std::complex<double> integral;
  const int steps = 400000;
  const double h = 2.0 * H / steps;
  for (int i = 0; i < steps; ++i) integral += unit_phase(gamma * (x + (i + 0.5) * h)) * h;
  CHECK(std::abs(m.model - integral) <= 1e-6 * std::abs(integral));
}

TEST_CASE("short_tail_companion") {
  // d(m) summed over [10 - 4, 10] and [10 + 20, 10 + 20 + 4] with H^eta = 20^0.5 -> 4.
  double want = 0;
  for (std::int64_t m = 6; m <= 10; ++m) want += static_cast<double>(multfunc::eval_exact(MultSpec::divisor(2), m));
  for (std::int64_t m = 30; m <= 34; ++m) want += static_cast<double>(multfunc::eval_exact(MultSpec::divisor(2), m));
  CHECK(short_tail_companion(2, 10, 20, 0.5) == want);
}

}
