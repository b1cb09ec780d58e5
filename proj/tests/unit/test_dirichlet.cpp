#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tc/common/arith.hpp"
#include "tc/common/errors.hpp"
#include "tc/dirichlet/characters.hpp"
#include "tc/dirichlet/singular_series.hpp"
#include "tc/oracle/oracle.hpp"

using namespace tc;
using namespace tc::dirichlet;
using multfunc::MultSpec;

TEST_SUITE("dirichlet") {

TEST_CASE("characters_mod examples") {
  const auto g1 = characters_mod(1);
  REQUIRE(g1.characters.size() == 1);
  CHECK(g1.characters[0](0) == std::complex<double>(1.0));
  CHECK(characters_mod(8).characters.size() == 4);
  const auto g5 = characters_mod(5);
  bool has_i = false;
  for (const auto& chi : g5.characters) {
    for (std::int64_t n = 1; n < 5; ++n) has_i = has_i || std::abs(chi(n) - std::complex<double>(0, 1)) < 1e-12;
  }
  CHECK(has_i);
}

TEST_CASE("character invariants") {
  for (std::int64_t q = 1; q <= 60; ++q) {
    const auto g = characters_mod(q);
    REQUIRE(g.characters.size() == euler_phi(static_cast<std::uint64_t>(q)));
    CHECK(g.characters[0].is_principal);
    for (const auto& chi : g.characters) {
      CHECK(std::abs(chi(1) - 1.0) < 1e-12);
      for (std::int64_t a = 0; a < q; ++a) {
        const bool unit = std::gcd(a, q) == 1;
        CHECK((std::abs(chi(a)) == doctest::Approx(unit ? 1.0 : 0.0)));
        for (std::int64_t b = 0; b < q; ++b) CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
      }
      CHECK(chi(q + 7) == chi(7));
      CHECK(chi.is_primitive == (oracle::conductor(chi.values) == q));
    }
  }
}

TEST_CASE("property: row orthogonality for q <= 100") {
  for (std::int64_t q = 1; q <= 100; ++q) {
    const auto g = characters_mod(q);
    const double phi = static_cast<double>(g.characters.size());
    double worst = 0;
    for (const auto& a : g.characters) {
      for (const auto& b : g.characters) {
        std::complex<double> s;
        for (std::int64_t n = 0; n < q; ++n) s += a(n) * std::conj(b(n));
        worst = std::max(worst, std::abs(s - (a.index == b.index ? phi : 0.0)));
      }
    }
    CHECK_MESSAGE(worst <= 1e-9, "q = " << q);
  }
}

TEST_CASE("gauss_sum examples") {
  CHECK(std::abs(gauss_sum(characters_mod(1).characters[0]) - 1.0) < 1e-12);
  CHECK(std::abs(gauss_sum(characters_mod(4).characters[0])) < 1e-12);
  const auto g3 = characters_mod(3);
  CHECK(std::abs(gauss_sum(g3.characters[1]) - std::complex<double>(0, std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("property: Gauss sums against brute force") {
  for (std::int64_t q = 1; q <= 50; ++q) {
    for (const auto& chi : characters_mod(q).characters) {
      const auto t = gauss_sum(chi);
      CHECK(std::abs(t - oracle::gauss_sum(chi.values)) <= 1e-9);
      if (chi.is_primitive) CHECK(std::abs(std::abs(t) - std::sqrt(static_cast<double>(q))) <= 1e-9);
      if (chi.is_principal) {
        CHECK(std::abs(t - static_cast<double>(moebius(static_cast<std::uint64_t>(q)))) <= 1e-9);
        CHECK(std::abs(t - oracle::ramanujan_sum(q, 1)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("mean_density examples") {
  const auto one = MultSpec::divisor(1);
  const auto d1 = mean_density(one, 1, 1, principal_character(1), 1000000);
  CHECK(std::abs(d1.estimate - 1.0) <= 1e-6);
  const auto d2 = mean_density(one, 1, 2, principal_character(2), 1000000);
  CHECK(std::abs(d2.estimate - 0.5) <= 1e-5);
  const auto d3 = mean_density(MultSpec::one_star_chi4(), 1, 1, principal_character(1), 1000000);
  CHECK(std::abs(d3.estimate - oracle::leibniz_quarter_pi(1000000)) <= 5e-3);
  CHECK(d3.error_gap >= 0.0);
  CHECK_FALSE(d3.expected_zero);
  CHECK(mean_density(MultSpec::tau_normalized(), 1, 1, principal_character(1), 10000).expected_zero);
  CHECK_THROWS_AS(mean_density(one, 1, 1, principal_character(1), 100), DomainError);
  CHECK_THROWS_AS(mean_density(one, 1, 3, principal_character(2), 10000), DomainError);
}

TEST_CASE("singular_coefficient examples") {
  const auto one = MultSpec::divisor(1);
  CHECK(std::abs(singular_coefficient(one, 1, 1000000) - 1.0) <= 1e-9);
  CHECK(std::abs(singular_coefficient(one, 2, 1000000)) <= 1e-4);
  CHECK(std::abs(singular_coefficient(MultSpec::one_star_chi4(), 1, 1000000) - std::numbers::pi / 4) <= 5e-3);
}

TEST_CASE("singular_series_sum examples") {
  const auto s1 = singular_series_sum(MultSpec::divisor(1), 50, 1000000);
  CHECK(s1.series_value == doctest::Approx(1.0).epsilon(1e-3));
  const auto st = singular_series_sum(MultSpec::tau_normalized(), 50, 100000);
  CHECK(std::abs(st.series_value) <= 1e-3);
  const auto s4 = singular_series_sum(MultSpec::one_star_chi4(), 50, 1000000);
  CHECK(s4.series_value > 0.0);
  CHECK(std::abs(s4.series_imag) <= 1e-6 * std::abs(s4.series_value));
  // Low-order terms against direct progression densities.
  for (std::int64_t q = 1; q <= 6; ++q) {
    CHECK(std::abs(s4.C(q) - singular_coefficient(MultSpec::one_star_chi4(), q, 1000000)) <= 1e-12);
  }
  CHECK(s4.tail_estimate >= 0.0);
}

TEST_CASE("series CSV round trip") {
  const auto s = singular_series_sum(MultSpec::one_star_chi4(), 12, 100000);
  const auto path = std::filesystem::temp_directory_path() / "tc_series_test.csv";
  write_series_csv(path, s);
  const auto r = read_series_csv(path, s.spec_id);
  CHECK(r.Q == s.Q);
  for (std::int64_t q = 1; q < s.Q; ++q) CHECK(r.C(q) == s.C(q));
  CHECK(r.series_value == doctest::Approx(s.series_value).epsilon(1e-14));
  std::filesystem::remove(path);
}

TEST_CASE("twisted_progression_check examples") {
  CHECK(twisted_progression_check(MultSpec::divisor(1), 1, 0, 100) <= 1e-9);
  CHECK(twisted_progression_check(MultSpec::divisor(2), 3, 1, 10000) <= 1e-6);
  CHECK(twisted_progression_check(MultSpec::one_star_chi4(), 4, 3, 10000) <= 1e-6);
  CHECK_THROWS_AS(twisted_progression_check(MultSpec::divisor(2), 6, 2, 100), DomainError);
}

TEST_CASE("property: additive/multiplicative decomposition") {
  std::mt19937_64 rng(7);
  const MultSpec specs[] = {MultSpec::divisor(2), MultSpec::divisor(3), MultSpec::moebius(),
                            MultSpec::one_star_chi4(), MultSpec::tau_normalized()};
  for (int t = 0; t < 30; ++t) {
    const auto& spec = specs[rng() % 5];
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 24);
    std::int64_t a;
    do a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)); while (std::gcd(a, q) != 1);
    const std::int64_t N = 1000 + static_cast<std::int64_t>(rng() % 9001);
    CHECK(twisted_progression_check(spec, q, a, N) <= static_cast<double>(N) * std::ldexp(1.0, -35));
  }
}

TEST_CASE("additive coefficient reduces to C_q for f = 1") {
  for (std::int64_t q : {1, 2, 3, 5, 6}) {
    CHECK(std::abs(additive_coefficient(MultSpec::divisor(1), q, 1, 100000) -
                   singular_coefficient(MultSpec::divisor(1), q, 100000)) <= 1e-4);
  }
}

}
