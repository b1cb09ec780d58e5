#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace tc::dirichlet {

struct DirichletCharacter {
  std::int64_t q = 1;
  std::vector<std::complex<double>> values;  // values[n] = chi(n mod q)
  bool is_principal = true;
  bool is_primitive = true;
  std::int64_t index = 0;

  std::complex<double> operator()(std::int64_t n) const {
    std::int64_t r = n % q;
    if (r < 0) r += q;
    return values[static_cast<std::size_t>(r)];
  }
};

struct CharacterGroup {
  std::int64_t q = 1;
  std::vector<DirichletCharacter> characters;
};

/// All phi(q) characters, built by CRT from generators of each prime-power
/// factor (a primitive root for odd p^e, {-1, 5} for 2^e). Principal first.
CharacterGroup characters_mod(std::int64_t q);

/// The principal character alone; avoids building the whole group.
DirichletCharacter principal_character(std::int64_t q);

/// tau(chi) = sum over units m mod q of chi(m) e(m/q).
std::complex<double> gauss_sum(const DirichletCharacter& chi);

}  // namespace tc::dirichlet
