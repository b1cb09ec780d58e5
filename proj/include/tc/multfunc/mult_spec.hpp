#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace tc::multfunc {

enum class Kind : std::uint8_t {
  DivisorK = 1,
  Moebius = 2,
  OneStarChi4 = 3,
  RamanujanTauNorm = 4,
  UserEuler = 5,
};

/// Prime-power table for a user-supplied multiplicative function.
/// `fallback`, when set, is used for every prime power missing from `values`.
struct EulerRule {
  std::map<std::pair<std::uint64_t, int>, std::complex<double>> values;
  std::optional<std::complex<double>> fallback;
};

/// A multiplicative function together with its class metadata: the divisor
/// bound |f(n)| <= d_k(n), the second-moment exponent alpha and whether
/// L(f, principal, s) is declared to have a pole at s = 1.
///
/// The analytic continuation hypothesis is declared, never verified.
struct MultSpec {
  Kind kind = Kind::DivisorK;
  int k = 1;  // DivisorK parameter
  int k_bound = 1;
  double alpha = 0.0;
  bool has_pole = true;
  std::shared_ptr<const EulerRule> rule;
  std::string label;

  static MultSpec divisor(int k);
  static MultSpec constant_one() { return divisor(1); }
  static MultSpec moebius();
  static MultSpec one_star_chi4();
  static MultSpec tau_normalized();
  static MultSpec user_euler(EulerRule rule, int k_bound, double alpha, bool has_pole,
                             std::string label);

  /// Integer-valued kinds, computed in exact arithmetic.
  bool is_exact() const;
  /// All built-in kinds are real-valued.
  bool is_real() const { return kind != Kind::UserEuler; }
  /// Moebius belongs to the pole-free class only conditionally.
  bool hypothesis_conditional() const { return kind == Kind::Moebius; }

  /// Stable identifier, e.g. "divisor:2", "tau_norm".
  std::string id() const;
  /// Tag stored in cache headers: low byte = kind, next bytes = parameter.
  std::uint64_t kind_tag() const;
};

bool operator==(const MultSpec& a, const MultSpec& b);

/// Parses "one", "divisor:K", "dK", "moebius", "one_star_chi4", "tau_norm".
/// Throws ConfigError on unknown identifiers.
MultSpec parse_spec_id(std::string_view id);

/// f(p^e) for the spec. Throws SpecificationError naming the prime power
/// when a user rule has no entry for it.
std::complex<double> prime_power_value(const MultSpec& spec, std::uint64_t p, int e);

/// f(p^e) for exact kinds.
std::int64_t prime_power_exact(const MultSpec& spec, std::uint64_t p, int e);

}  // namespace tc::multfunc
