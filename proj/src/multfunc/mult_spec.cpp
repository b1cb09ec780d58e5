#include "tc/multfunc/mult_spec.hpp"

#include <charconv>

#include "tc/common/arith.hpp"
#include "tc/common/errors.hpp"
#include "tc/multfunc/tau.hpp"

namespace tc::multfunc {

MultSpec MultSpec::divisor(int k) {
  if (k < 1) throw ConfigError("divisor function needs k >= 1");
  MultSpec s;
  s.kind = Kind::DivisorK;
  s.k = k;
  s.k_bound = k;
  s.alpha = 0.0;
  s.has_pole = true;
  s.label = k == 1 ? "one" : "d" + std::to_string(k);
  return s;
}

MultSpec MultSpec::moebius() {
  MultSpec s;
  s.kind = Kind::Moebius;
  s.k_bound = 1;
  s.has_pole = false;
  s.label = "moebius";
  return s;
}

MultSpec MultSpec::one_star_chi4() {
  MultSpec s;
  s.kind = Kind::OneStarChi4;
  s.k_bound = 2;
  s.has_pole = true;
  s.label = "one_star_chi4";
  return s;
}

MultSpec MultSpec::tau_normalized() {
  MultSpec s;
  s.kind = Kind::RamanujanTauNorm;
  s.k_bound = 2;
  s.has_pole = false;
  s.label = "tau_norm";
  return s;
}

MultSpec MultSpec::user_euler(EulerRule rule, int k_bound, double alpha, bool has_pole,
                              std::string label) {
  if (k_bound < 1) throw ConfigError("user rule needs k_bound >= 1");
  MultSpec s;
  s.kind = Kind::UserEuler;
  s.k_bound = k_bound;
  s.alpha = alpha;
  s.has_pole = has_pole;
  s.rule = std::make_shared<const EulerRule>(std::move(rule));
  s.label = std::move(label);
  return s;
}

bool MultSpec::is_exact() const {
  return kind == Kind::DivisorK || kind == Kind::Moebius || kind == Kind::OneStarChi4;
}

std::string MultSpec::id() const {
  switch (kind) {
    case Kind::DivisorK:
      return "divisor:" + std::to_string(k);
    case Kind::Moebius:
      return "moebius";
    case Kind::OneStarChi4:
      return "one_star_chi4";
    case Kind::RamanujanTauNorm:
      return "tau_norm";
    case Kind::UserEuler:
      return "user:" + label;
  }
  return "unknown";
}

std::uint64_t MultSpec::kind_tag() const {
  const std::uint64_t param = kind == Kind::DivisorK ? static_cast<std::uint64_t>(k) : 0;
  return static_cast<std::uint64_t>(kind) | (param << 8);
}

bool operator==(const MultSpec& a, const MultSpec& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::DivisorK) return a.k == b.k;
  if (a.kind == Kind::UserEuler) return a.rule == b.rule;
  return true;
}

MultSpec parse_spec_id(std::string_view id) {
  if (id == "one" || id == "1" || id == "const1") return MultSpec::constant_one();
  if (id == "moebius" || id == "mobius" || id == "mu") return MultSpec::moebius();
  if (id == "one_star_chi4" || id == "1*chi4" || id == "r2") return MultSpec::one_star_chi4();
  if (id == "tau_norm" || id == "tau" || id == "lambda") return MultSpec::tau_normalized();
  std::string_view digits;
  if (id.starts_with("divisor:")) digits = id.substr(8);
  else if (id.size() >= 2 && id[0] == 'd') digits = id.substr(1);
  if (!digits.empty()) {
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 1) return MultSpec::divisor(k);
  }
  throw ConfigError("unknown spec id '" + std::string(id) + "'");
}

std::int64_t prime_power_exact(const MultSpec& spec, std::uint64_t p, int e) {
  if (e == 0) return 1;
  switch (spec.kind) {
    case Kind::DivisorK:
      return binomial(e + spec.k - 1, spec.k - 1);
    case Kind::Moebius:
      return e == 1 ? -1 : 0;
    case Kind::OneStarChi4:
      if (p == 2) return 1;
      if (p % 4 == 1) return e + 1;
      return e % 2 == 0 ? 1 : 0;
    default:
      throw SpecificationError("prime_power_exact: spec '" + spec.id() + "' is not integer-valued");
  }
}

std::complex<double> prime_power_value(const MultSpec& spec, std::uint64_t p, int e) {
  if (e == 0) return 1.0;
  switch (spec.kind) {
    case Kind::RamanujanTauNorm:
      return static_cast<double>(tau_normalized_prime_power(p, e));
    case Kind::UserEuler: {
      const auto& rule = *spec.rule;
      if (auto it = rule.values.find({p, e}); it != rule.values.end()) return it->second;
      if (rule.fallback) return *rule.fallback;
      throw SpecificationError("user rule '" + spec.label + "' has no value for prime power " +
                               std::to_string(p) + "^" + std::to_string(e));
    }
    default:
      return static_cast<double>(prime_power_exact(spec, p, e));
  }
}

}  // namespace tc::multfunc
