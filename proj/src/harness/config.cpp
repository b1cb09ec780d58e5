#include "tc/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "tc/common/errors.hpp"
#include "tc/multfunc/mult_spec.hpp"

namespace tc::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> split_list(std::string s) {
  s = trim(s);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = unquote(trim(item));
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(std::string_view s, std::string_view what) {
  const std::string str = trim(s);
  try {
    std::size_t used = 0;
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("invalid number '" + str + "' for " + std::string(what));
  }
}

double parse_theta(std::string_view s, double alpha) {
  const std::string t = trim(s);
  if (t == "preset:thm13" || t == "thm13") return 10.0 / 13.0;
  if (t == "preset:thm14" || t == "thm14") {
    const double a = (1.0 + alpha) * (1.0 + alpha);
    return a / (a + 1.0);
  }
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    const double p = parse_real(t.substr(0, slash), "exponent numerator");
    const double q = parse_real(t.substr(slash + 1), "exponent denominator");
    if (q == 0.0) throw ConfigError("exponent '" + t + "' has a zero denominator");
    return p / q;
  }
  return parse_real(t, "exponent");
}

double spec_alpha(const std::vector<std::string>& specs) {
  if (specs.empty()) return 0.0;
  return multfunc::parse_spec_id(specs.front()).alpha;
}

}  // namespace

const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Correlate: return "correlate";
    case Experiment::SingularSeries: return "singular_series";
    case Experiment::ArcScan: return "arc_scan";
    case Experiment::MainTermTrend: return "main_term_trend";
    case Experiment::TripleCount: return "triple_count";
    case Experiment::IdentityCheck: return "identity_check";
  }
  return "?";
}

Experiment parse_experiment(std::string_view s) {
  std::string k = trim(s);
  for (auto& ch : k) {
    if (ch == '-') ch = '_';
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  static const std::map<std::string, Experiment> names{
      {"correlate", Experiment::Correlate},         {"singular_series", Experiment::SingularSeries},
      {"singularseries", Experiment::SingularSeries}, {"arc_scan", Experiment::ArcScan},
      {"arcscan", Experiment::ArcScan},             {"main_term_trend", Experiment::MainTermTrend},
      {"maintermtrend", Experiment::MainTermTrend}, {"triple_count", Experiment::TripleCount},
      {"triplecount", Experiment::TripleCount},     {"identity_check", Experiment::IdentityCheck},
      {"identitycheck", Experiment::IdentityCheck}};
  const auto it = names.find(k);
  if (it == names.end()) throw ConfigError("unknown experiment '" + std::string(s) + "'");
  return it->second;
}

std::int64_t snap_ceil(double v) {
  const double r = std::round(v);
  if (std::fabs(v - r) <= 1e-9 * std::max(1.0, std::fabs(v))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(v));
}

std::int64_t parse_integer(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size()) return v;
  const double d = parse_real(t, what);
  if (d != std::floor(d) || std::fabs(d) > 9e15) {
    throw ConfigError("'" + t + "' is not an integer for " + std::string(what));
  }
  return static_cast<std::int64_t>(d);
}

std::int64_t evaluate_H(std::string_view expr, std::int64_t X, double alpha) {
  std::string e = unquote(trim(expr));
  std::string theta_text;
  if (e.rfind("X^", 0) == 0 || e.rfind("x^", 0) == 0) {
    theta_text = e.substr(2);
  } else if (e.rfind("preset:", 0) == 0) {
    theta_text = e;
  } else {
    const auto H = parse_integer(e, "H");
    if (H < 2) throw ConfigError("H must be >= 2 (got " + std::to_string(H) + ")");
    return H;
  }
  const double theta = parse_theta(theta_text, alpha);
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ConfigError("exponent theta = " + std::to_string(theta) + " in H = \"" + e + "\" is outside (0, 1)");
  }
  const auto H = snap_ceil(std::pow(static_cast<double>(X), theta));
  if (H < 2) throw ConfigError("H = \"" + e + "\" evaluates to " + std::to_string(H) + " < 2");
  return H;
}

std::int64_t evaluate_Q(std::string_view expr, std::int64_t X, std::int64_t H, double epsilon, double alpha) {
  const std::string e = unquote(trim(expr));
  double q;
  if (e == "preset:thm13") {
    q = static_cast<double>(X) * std::pow(static_cast<double>(H), -1.0 + 5.0 * epsilon);
  } else if (e == "preset:thm14") {
    q = static_cast<double>(X) / std::pow(static_cast<double>(H), 1.0 / (1.0 + alpha) - 5.0 * epsilon);
  } else {
    const auto Q = parse_integer(e, "Q");
    if (Q < 2) throw ConfigError("Q must be >= 2 (got " + std::to_string(Q) + ")");
    return Q;
  }
  return std::max<std::int64_t>(2, snap_ceil(q));
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::map<std::string, std::pair<std::string, int>> raw;
  static const char* known[] = {"experiment", "spec",   "X",       "H",           "Q",       "epsilon",
                                "eta",        "N",      "method",  "kind",        "c",       "series",
                                "output",     "csv",    "threads", "coeff_cache", "seed"};
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + body + "'");
    }
    const std::string key = trim(body.substr(0, eq));
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError("unknown key '" + key + "' on line " + std::to_string(line_no));
    }
    if (raw.count(key)) throw ConfigError("duplicate key '" + key + "' on line " + std::to_string(line_no));
    raw[key] = {trim(body.substr(eq + 1)), line_no};
  }

  const auto value = [&](const std::string& key) { return unquote(raw.at(key).first); };
  const auto require = [&](const std::string& key) {
    if (!raw.count(key)) {
      throw ConfigError("missing required key '" + key + "' for experiment " + experiment_name(cfg.experiment));
    }
  };

  if (raw.count("experiment")) cfg.experiment = parse_experiment(value("experiment"));
  require("spec");
  cfg.specs = split_list(value("spec"));
  if (cfg.specs.size() != 1 && cfg.specs.size() != 3) throw ConfigError("spec must list one or three ids");
  double alpha = 0.0;
  try {
    for (const auto& id : cfg.specs) (void)multfunc::parse_spec_id(id);
    alpha = spec_alpha(cfg.specs);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  if (raw.count("epsilon")) cfg.epsilon = parse_real(value("epsilon"), "epsilon");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.125)) throw ConfigError("epsilon must lie in (0, 1/8)");
  cfg.eta = raw.count("eta") ? parse_real(value("eta"), "eta") : 1.0 - 7.0 * cfg.epsilon;
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) throw ConfigError("eta must lie in (0, 1)");
  if (raw.count("N")) cfg.N = parse_integer(value("N"), "N");
  if (raw.count("method")) cfg.method = value("method");
  if (cfg.method != "direct" && cfg.method != "conv") throw ConfigError("method must be 'direct' or 'conv'");
  if (raw.count("kind")) cfg.kind = value("kind");
  if (cfg.kind != "major" && cfg.kind != "minor") throw ConfigError("kind must be 'major' or 'minor'");
  if (raw.count("c")) {
    cfg.c_values.clear();
    for (const auto& c : split_list(value("c"))) cfg.c_values.push_back(parse_real(c, "c"));
  }
  if (raw.count("series")) cfg.series_path = value("series");
  if (raw.count("output")) cfg.output = value("output");
  if (raw.count("csv")) cfg.csv_output = value("csv");
  if (raw.count("coeff_cache")) cfg.coeff_cache = value("coeff_cache");
  if (raw.count("threads")) cfg.threads = static_cast<std::size_t>(parse_integer(value("threads"), "threads"));
  if (raw.count("seed")) cfg.seed = static_cast<std::uint64_t>(parse_integer(value("seed"), "seed"));

  if (cfg.experiment != Experiment::SingularSeries) {
    require("X");
    for (const auto& x : split_list(value("X"))) cfg.X_values.push_back(parse_integer(x, "X"));
    if (cfg.X_values.empty()) throw ConfigError("X must not be empty");
    for (const auto X : cfg.X_values) {
      if (X < 2) throw ConfigError("X must be >= 2");
    }
    require("H");
    cfg.H_expr = value("H");
    for (const auto X : cfg.X_values) cfg.H_values.push_back(evaluate_H(cfg.H_expr, X, alpha));
  } else if (raw.count("X")) {
    cfg.X_values.push_back(parse_integer(value("X"), "X"));
  }

  const bool uses_Q = cfg.experiment == Experiment::SingularSeries || cfg.experiment == Experiment::ArcScan ||
                      cfg.experiment == Experiment::MainTermTrend;
  if (uses_Q) {
    cfg.Q_expr = raw.count("Q") ? value("Q") : (cfg.experiment == Experiment::SingularSeries ? "50" : "preset:thm13");
    if (cfg.experiment == Experiment::SingularSeries) {
      if (cfg.Q_expr.rfind("preset:", 0) == 0) throw ConfigError("singular_series needs an explicit integer Q");
      cfg.Q_values.push_back(evaluate_Q(cfg.Q_expr, 0, 0, cfg.epsilon));
    } else {
      for (std::size_t i = 0; i < cfg.X_values.size(); ++i) {
        cfg.Q_values.push_back(evaluate_Q(cfg.Q_expr, cfg.X_values[i], cfg.H_values[i], cfg.epsilon, alpha));
      }
    }
  }
  if (cfg.experiment == Experiment::Correlate || cfg.experiment == Experiment::IdentityCheck ||
      cfg.experiment == Experiment::MainTermTrend) {
    for (std::size_t i = 0; i < cfg.X_values.size(); ++i) {
      if (cfg.H_values[i] > cfg.X_values[i]) {
        throw ConfigError("H = " + std::to_string(cfg.H_values[i]) + " exceeds X = " + std::to_string(cfg.X_values[i]));
      }
    }
  }
  return cfg;
}

}  // namespace tc::harness
