#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tc::harness {

struct PropertyResult {
  std::string module;
  std::string name;
  bool pass = false;
  double worst = 0.0;  // largest observed violation measure, property-specific
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Individual properties shared with the acceptance driver.
PropertyResult direct_conv_equivalence(std::uint64_t seed, int cases);
PropertyResult gauss_sum_modulus(std::int64_t q_max);
PropertyResult principal_gauss_sum(std::int64_t q_max);
/// worst = max |additive - character side| over the random cases.
PropertyResult twisted_progression(std::uint64_t seed, int cases, std::int64_t N, bool random_N, double tolerance);

std::vector<PropertyResult> run_property_suite(std::uint64_t seed = kDefaultSeed);

}  // namespace tc::harness
