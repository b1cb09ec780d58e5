#pragma once

#include <cstdint>

namespace tc {

/// Work and memory budgets shared by every module.
struct Limits {
  std::int64_t max_window = 50'000'000;           // values per coefficient window
  std::int64_t max_factor_n = 1'000'000'000'000;  // trial division bound on n
  std::int64_t max_tau = 1'000'000;               // exact tau(n) series length
  std::int64_t max_character_modulus = 1'000'000;
  std::int64_t max_character_table = 50'000'000;  // phi(q) * q entries
  std::int64_t max_scan_grid = std::int64_t{1} << 28;
};

const Limits& limits();
void set_limits(const Limits& l);

}  // namespace tc
