#include "tc/dirichlet/characters.hpp"

#include <algorithm>
#include <numeric>

#include "tc/common/arith.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/limits.hpp"
#include "tc/common/phase.hpp"
#include "tc/common/summation.hpp"

namespace tc::dirichlet {

namespace {

// One cyclic factor of (Z/p^e)^*: discrete logs of residues mod `modulus`
// to a generator of order `order`; log = -1 marks non-units.
struct CyclicFactor {
  std::int64_t modulus;
  std::int64_t order;
  std::vector<std::int64_t> log;
};

std::int64_t primitive_root_mod_p(std::int64_t p) {
  if (p == 2) return 1;
  const auto factors = factorize(static_cast<std::uint64_t>(p - 1));
  for (std::int64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : factors) {
      (void)e;
      if (powmod(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(p - 1) / r,
                 static_cast<std::uint64_t>(p)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

CyclicFactor log_table(std::int64_t modulus, std::int64_t generator, std::int64_t order) {
  CyclicFactor f{modulus, order, std::vector<std::int64_t>(static_cast<std::size_t>(modulus), -1)};
  std::int64_t x = 1;
  for (std::int64_t k = 0; k < order; ++k) {
    f.log[static_cast<std::size_t>(x)] = k;
    x = x * generator % modulus;
  }
  return f;
}

// A prime-power component with its cyclic factors and the primitivity rule.
struct Component {
  std::int64_t p;
  int e;
  std::int64_t pe;
  std::vector<CyclicFactor> factors;
};

Component build_component(std::int64_t p, int e) {
  std::int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  Component c{p, e, pe, {}};
  if (p != 2) {
    std::int64_t g = primitive_root_mod_p(p);
    if (e >= 2 && powmod(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(p - 1),
                         static_cast<std::uint64_t>(p * p)) == 1) {
      g += p;
    }
    c.factors.push_back(log_table(pe, g, pe / p * (p - 1)));
    return c;
  }
  if (e == 1) return c;
  // n = (-1)^a 5^b mod 2^e
  CyclicFactor minus{pe, 2, std::vector<std::int64_t>(static_cast<std::size_t>(pe), -1)};
  CyclicFactor five{pe, e >= 3 ? pe / 4 : 1, std::vector<std::int64_t>(static_cast<std::size_t>(pe), -1)};
  std::int64_t x = 1;
  for (std::int64_t b = 0; b < five.order; ++b) {
    minus.log[static_cast<std::size_t>(x)] = 0;
    five.log[static_cast<std::size_t>(x)] = b;
    minus.log[static_cast<std::size_t>(pe - x)] = 1;
    five.log[static_cast<std::size_t>(pe - x)] = b;
    x = x * 5 % pe;
  }
  c.factors.push_back(std::move(minus));
  c.factors.push_back(std::move(five));
  return c;
}

bool component_primitive(const Component& c, const std::vector<std::int64_t>& j) {
  if (c.p != 2) {
    if (c.e == 1) return j[0] != 0;
    return j[0] % c.p != 0;
  }
  if (c.e == 1) return false;
  if (c.e == 2) return j[0] == 1;
  return j[1] % 2 == 1;
}

}  // namespace

CharacterGroup characters_mod(std::int64_t q) {
  if (q < 1) throw DomainError("characters_mod: modulus must be >= 1");
  if (q > limits().max_character_modulus) {
    throw ResourceError("character modulus " + std::to_string(q) + " exceeds budget " +
                        std::to_string(limits().max_character_modulus));
  }
  const std::int64_t phi = static_cast<std::int64_t>(euler_phi(static_cast<std::uint64_t>(q)));
  if (phi > limits().max_character_table / q) {
    throw ResourceError("character table for modulus " + std::to_string(q) + " exceeds budget");
  }

  std::vector<Component> comps;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(q))) {
    comps.push_back(build_component(static_cast<std::int64_t>(p), e));
  }
  // Flatten the cyclic factors; the exponent of the group is a common denominator.
  struct Slot {
    std::size_t comp;
    const CyclicFactor* f;
  };
  std::vector<Slot> slots;
  std::int64_t lambda = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (const auto& f : comps[i].factors) {
      slots.push_back({i, &f});
      lambda = std::lcm(lambda, f.order);
    }
  }
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(lambda));
  for (std::int64_t k = 0; k < lambda; ++k) roots[static_cast<std::size_t>(k)] = unit_phase_rational(k, lambda);

  // For each n mod q: the log of n in every slot, or -1 for non-units.
  std::vector<std::vector<std::int64_t>> logs(slots.size(), std::vector<std::int64_t>(static_cast<std::size_t>(q)));
  std::vector<bool> unit(static_cast<std::size_t>(q));
  for (std::int64_t n = 0; n < q; ++n) unit[static_cast<std::size_t>(n)] = std::gcd(n, q) == 1;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& f = *slots[s].f;
    for (std::int64_t n = 0; n < q; ++n) logs[s][static_cast<std::size_t>(n)] = f.log[static_cast<std::size_t>(n % f.modulus)];
  }

  CharacterGroup group;
  group.q = q;
  group.characters.reserve(static_cast<std::size_t>(phi));
  std::vector<std::int64_t> j(slots.size(), 0);
  for (std::int64_t idx = 0; idx < phi; ++idx) {
    DirichletCharacter chi;
    chi.q = q;
    chi.index = idx;
    chi.values.assign(static_cast<std::size_t>(q), 0.0);
    chi.is_principal = std::all_of(j.begin(), j.end(), [](std::int64_t v) { return v == 0; });
    chi.is_primitive = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::vector<std::int64_t> local;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].comp == i) local.push_back(j[s]);
      }
      if (!component_primitive(comps[i], local)) chi.is_primitive = false;
    }
    for (std::int64_t n = 0; n < q; ++n) {
      if (!unit[static_cast<std::size_t>(n)]) continue;
      std::int64_t num = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        num += j[s] * logs[s][static_cast<std::size_t>(n)] % slots[s].f->order * (lambda / slots[s].f->order);
      }
      chi.values[static_cast<std::size_t>(n)] = roots[static_cast<std::size_t>(num % lambda)];
    }
    group.characters.push_back(std::move(chi));
    for (std::size_t s = slots.size(); s-- > 0;) {
      if (++j[s] < slots[s].f->order) break;
      j[s] = 0;
    }
  }
  return group;
}

DirichletCharacter principal_character(std::int64_t q) {
  if (q < 1) throw DomainError("principal_character: modulus must be >= 1");
  if (q > limits().max_character_modulus) {
    throw ResourceError("character modulus " + std::to_string(q) + " exceeds budget");
  }
  DirichletCharacter chi;
  chi.q = q;
  chi.values.resize(static_cast<std::size_t>(q));
  for (std::int64_t n = 0; n < q; ++n) chi.values[static_cast<std::size_t>(n)] = std::gcd(n, q) == 1 ? 1.0 : 0.0;
  chi.is_principal = true;
  chi.is_primitive = q == 1;
  return chi;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  CompensatedComplexSum s;
  for (std::int64_t m = 1; m <= chi.q; ++m) {
    const auto c = chi(m);
    if (c != 0.0) s.add(c * unit_phase_rational(m, chi.q));
  }
  return s.value();
}

}  // namespace tc::dirichlet
