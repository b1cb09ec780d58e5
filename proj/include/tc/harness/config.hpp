#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tc::harness {

enum class Experiment { Correlate, SingularSeries, ArcScan, MainTermTrend, TripleCount, IdentityCheck };

const char* experiment_name(Experiment e);
Experiment parse_experiment(std::string_view s);

struct ExperimentConfig {
  Experiment experiment = Experiment::Correlate;
  std::vector<std::string> specs;       // one id, or three for correlations
  std::vector<std::int64_t> X_values;   // X; several for main-term trends
  std::string H_expr;                   // as written
  std::vector<std::int64_t> H_values;   // evaluated per X
  std::string Q_expr;                   // integer or preset:thm13 / preset:thm14
  std::vector<std::int64_t> Q_values;   // evaluated per X (before any clamp)
  double epsilon = 0.05;
  double eta = 0.65;                    // 1 - 7 eps unless given
  std::int64_t N = 1000000;
  std::string method = "conv";
  std::string kind = "minor";
  std::vector<double> c_values{1e-3};
  std::string series_path;
  std::string output;
  std::string csv_output;
  std::string coeff_cache;
  std::size_t threads = 0;  // 0 = default budget
  std::uint64_t seed = 20240601;

  std::int64_t X() const { return X_values.front(); }
  std::int64_t H() const { return H_values.front(); }
};

/// `key = value` lines; `#` starts a comment; strings may be quoted; lists are
/// comma-separated, optionally in brackets.
ExperimentConfig parse_config(std::string_view text);

/// ceil(X^theta) for "X^theta" (theta decimal, p/q, or a preset name), or a
/// plain integer. Values within 1e-9 relative of an integer snap to it.
std::int64_t evaluate_H(std::string_view expr, std::int64_t X, double alpha = 0.0);

/// Explicit integer, or preset:thm13 = ceil(X H^{-1+5 eps}),
/// preset:thm14 = ceil(X / H^{1/(1+alpha) - 5 eps}).
std::int64_t evaluate_Q(std::string_view expr, std::int64_t X, std::int64_t H, double epsilon, double alpha = 0.0);

/// Integer with optional scientific notation ("1e5").
std::int64_t parse_integer(std::string_view s, std::string_view what);

/// Snapping ceiling: values within 1e-9 relative of an integer round to it.
std::int64_t snap_ceil(double v);

}  // namespace tc::harness
