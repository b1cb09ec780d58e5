#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tc/harness/config.hpp"

namespace tc::harness {

inline constexpr const char* kVersion = "0.1.0";

struct RunRecord {
  nlohmann::json config;
  nlohmann::json result;
  std::vector<std::string> log;  // every parameter change (Q clamps) and scale warning
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

nlohmann::json config_echo(const ExperimentConfig& cfg);

/// Dispatches to the owning module. Writes the record to cfg.output and any
/// CSV side output to cfg.csv_output when those are set.
RunRecord run(const ExperimentConfig& cfg);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Q reduced to the largest value with disjoint major arcs; the change is logged.
std::int64_t clamp_Q(std::int64_t Q, std::int64_t H, double epsilon, std::vector<std::string>& log);

}  // namespace tc::harness
