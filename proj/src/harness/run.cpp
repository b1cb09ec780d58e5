#include "tc/harness/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>

#include "tc/arcs/arcs.hpp"
#include "tc/common/arith.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/parallel.hpp"
#include "tc/correlate/correlate.hpp"
#include "tc/dirichlet/singular_series.hpp"
#include "tc/multfunc/sieve.hpp"

namespace tc::harness {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

multfunc::MultSpec spec_of(const std::string& id) {
  try {
    return multfunc::parse_spec_id(id);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::array<multfunc::MultSpec, 3> triple(const ExperimentConfig& cfg) {
  if (cfg.specs.size() == 1) {
    const auto s = spec_of(cfg.specs[0]);
    return {s, s, s};
  }
  return {spec_of(cfg.specs[0]), spec_of(cfg.specs[1]), spec_of(cfg.specs[2])};
}

multfunc::MultSpec single(const ExperimentConfig& cfg) {
  if (cfg.specs.size() != 1) {
    throw ConfigError(std::string("experiment ") + experiment_name(cfg.experiment) + " takes a single spec");
  }
  return spec_of(cfg.specs[0]);
}

void scale_warning(const ExperimentConfig& cfg, std::vector<std::string>& log) {
  const double need = 10.0 / 13.0 + 100.0 * cfg.epsilon;
  if (need >= 1.0) {
    log.push_back("desk scale: the asymptotic range H >= X^(10/13 + 100 eps) is vacuous at eps = " +
                  std::to_string(cfg.epsilon) + " (exponent " + std::to_string(need) +
                  " >= 1); figures are measurements, not tests of the asymptotic statement");
  }
}

json correlation_json(const correlate::CorrelationResult& r) {
  json j;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["main_term"] = optional_number(r.main_term);
  j["relative_gap"] = optional_number(r.relative_gap);
  j["smallness_ratio"] = optional_number(r.smallness_ratio);
  j["X"] = r.X;
  j["H"] = r.H;
  j["method"] = correlate::method_name(r.method);
  j["seconds"] = r.seconds;
  j["exact_numerator"] = r.exact_numerator ? json(to_string(*r.exact_numerator)) : json(nullptr);
  j["specs"] = {r.spec_ids[0], r.spec_ids[1], r.spec_ids[2]};
  return j;
}

correlate::CorrelationResult correlate_once(const std::array<multfunc::MultSpec, 3>& s, std::int64_t X,
                                            std::int64_t H, const std::string& method, multfunc::WindowCache* cache) {
  const correlate::CorrelationRequest req{s[0], s[1], s[2], X, H, correlate::Weight::Fejer};
  return method == "direct" ? correlate::ternary_direct(req, cache) : correlate::ternary_convolution(req, cache);
}

json series_json(const dirichlet::SingularSeries& s) {
  json j;
  j["spec"] = s.spec_id;
  j["Q"] = s.Q;
  j["N"] = s.N;
  j["series_value"] = s.series_value;
  j["series_imag"] = s.series_imag;
  j["tail_estimate"] = std::isfinite(s.tail_estimate) ? json(s.tail_estimate) : json("inf");
  j["fit_c"] = s.fit_c;
  j["fit_delta"] = s.fit_delta;
  j["fit_ok"] = s.fit_ok;
  json rows = json::array();
  for (std::int64_t q = 1; q < s.Q; ++q) {
    rows.push_back({{"q", q},
                    {"re", s.C(q).real()},
                    {"im", s.C(q).imag()},
                    {"err", s.c_error[static_cast<std::size_t>(q - 1)]}});
  }
  j["c_table"] = rows;
  return j;
}

json run_correlate(const ExperimentConfig& cfg, multfunc::WindowCache* cache, std::vector<std::string>& log) {
  scale_warning(cfg, log);
  const auto s = triple(cfg);
  auto r = correlate_once(s, cfg.X(), cfg.H(), cfg.method, cache);
  if (!cfg.series_path.empty()) {
    const auto series = dirichlet::read_series_csv(cfg.series_path, s[0].id());
    r = correlate::compare_to_main_term(r, series, cfg.X(), cfg.H(), cfg.epsilon);
  }
  return correlation_json(r);
}

json run_singular_series(const ExperimentConfig& cfg, multfunc::WindowCache* cache) {
  const auto spec = single(cfg);
  const auto series = dirichlet::singular_series_sum(spec, cfg.Q_values.front(), cfg.N, cache);
  if (!cfg.csv_output.empty()) dirichlet::write_series_csv(cfg.csv_output, series);
  return series_json(series);
}

json run_arc_scan(const ExperimentConfig& cfg, std::vector<std::string>& log) {
  const auto spec = single(cfg);
  const std::int64_t X = cfg.X(), H = cfg.H();
  const std::int64_t Q = clamp_Q(cfg.Q_values.front(), H, cfg.epsilon, log);
  const auto dec = arcs::decompose(Q, H, cfg.epsilon);
  const auto window = multfunc::sieve_window(spec, X, X + 2 * H);
  const auto kind = cfg.kind == "major" ? arcs::ArcKind::Major : arcs::ArcKind::Minor;
  const auto rep = arcs::sup_scan(window, dec, X, 2 * H, kind, cfg.eta, spec.k_bound, cfg.epsilon);

  json rows = json::array();
  std::string csv = "x,alpha,q,a,gamma,abs_value,bound,ratio\n";
  for (const auto& p : rep.top) {
    const auto nf = arcs::nearest_fraction(Q, p.alpha);
    const auto b = arcs::theorem_bound(nf.q, nf.gamma, static_cast<double>(X), static_cast<double>(H), cfg.eta,
                                       spec.k_bound, cfg.epsilon);
    rows.push_back({{"x", X},
                    {"alpha", p.alpha},
                    {"q", nf.q},
                    {"a", nf.a},
                    {"gamma", nf.gamma},
                    {"abs_value", p.abs_value},
                    {"bound", b.value},
                    {"ratio", p.abs_value / b.value}});
    char line[256];
    std::snprintf(line, sizeof line, "%lld,%.17g,%lld,%lld,%.17g,%.17g,%.17g,%.17g\n", static_cast<long long>(X),
                  p.alpha, static_cast<long long>(nf.q), static_cast<long long>(nf.a), nf.gamma, p.abs_value,
                  b.value, p.abs_value / b.value);
    csv += line;
  }
  if (!cfg.csv_output.empty()) {
    std::ofstream os(cfg.csv_output);
    if (!os || !(os << csv)) throw IoError("cannot write " + cfg.csv_output);
  }
  json j;
  j["kind"] = arcs::arc_kind_name(kind);
  j["Q"] = Q;
  j["H"] = H;
  j["X"] = X;
  j["beta"] = dec.beta;
  j["sup_abs"] = rep.sup_abs;
  j["argmax"] = {{"x", rep.x}, {"alpha", rep.argmax_alpha}};
  j["nearest"] = {{"q", rep.q}, {"a", rep.a}, {"gamma", rep.gamma}};
  j["bound_value"] = rep.bound_value;
  j["regime"] = rep.regime;
  j["ratio"] = rep.ratio;
  j["trivial_bound"] = rep.trivial_bound;
  j["grid"] = {{"spacing", rep.spacing}, {"points", rep.grid_points}, {"refinement_depth", rep.refinement_depth}};
  j["round_sups"] = rep.round_sups;
  j["companion_E"] = rep.companion;
  j["top"] = rows;
  return j;
}

json run_main_term_trend(const ExperimentConfig& cfg, multfunc::WindowCache* cache, std::vector<std::string>& log) {
  scale_warning(cfg, log);
  const auto spec = single(cfg);
  const std::array<multfunc::MultSpec, 3> s{spec, spec, spec};
  std::vector<std::int64_t> Qs;
  for (std::size_t i = 0; i < cfg.X_values.size(); ++i) {
    Qs.push_back(clamp_Q(cfg.Q_values[i], cfg.H_values[i], cfg.epsilon, log));
  }
  const auto Q_max = *std::max_element(Qs.begin(), Qs.end());
  const auto full = dirichlet::singular_series_sum(spec, Q_max, cfg.N, cache);
  json rows = json::array();
  std::vector<double> measure;
  for (std::size_t i = 0; i < cfg.X_values.size(); ++i) {
    auto series = full;
    const auto v = dirichlet::truncated_series(full, Qs[i]);
    series.series_value = v.real();
    series.series_imag = v.imag();
    auto r = correlate_once(s, cfg.X_values[i], cfg.H_values[i], cfg.method, cache);
    r = correlate::compare_to_main_term(r, series, cfg.X_values[i], cfg.H_values[i], cfg.epsilon);
    auto row = correlation_json(r);
    row["Q"] = Qs[i];
    row["series_value"] = series.series_value;
    rows.push_back(row);
    measure.push_back(r.relative_gap ? *r.relative_gap : *r.smallness_ratio);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < measure.size(); ++i) decreasing = decreasing && measure[i] < measure[i - 1];
  json j;
  j["spec"] = spec.id();
  j["measure"] = spec.has_pole ? "relative_gap" : "smallness_ratio";
  j["rows"] = rows;
  j["strictly_decreasing"] = decreasing;
  j["series_tail_estimate"] = std::isfinite(full.tail_estimate) ? json(full.tail_estimate) : json("inf");
  return j;
}

json run_triple_count(const ExperimentConfig& cfg, multfunc::WindowCache* cache) {
  const auto spec = single(cfg);
  const std::int64_t X = cfg.X(), H = cfg.H();
  const auto window = multfunc::fetch_window(spec, 1, std::max<std::int64_t>(1, X - 2 * H), 2 * X + 2 * H, cache);
  json rows = json::array();
  std::int64_t prev = -1;
  bool monotone = true;
  auto cs = cfg.c_values;
  std::sort(cs.begin(), cs.end());
  for (const double c : cs) {
    const auto r = correlate::count_triples(window, X, H, c);
    if (prev >= 0 && r.count > prev) monotone = false;
    prev = r.count;
    rows.push_back({{"c", r.c}, {"count", r.count}, {"normalized", r.normalized}});
  }
  return {{"spec", spec.id()}, {"X", X}, {"H", H}, {"counts", rows}, {"nonincreasing", monotone}};
}

json run_identity_check(const ExperimentConfig& cfg, multfunc::WindowCache* cache) {
  const auto s = triple(cfg);
  const correlate::CorrelationRequest req{s[0], s[1], s[2], cfg.X(), cfg.H(), correlate::Weight::Fejer};
  const auto in = correlate::load_windows(req, cache);
  const auto d = correlate::ternary_direct(in);
  const auto c = correlate::ternary_convolution(in);
  json j;
  j["X"] = cfg.X();
  j["H"] = cfg.H();
  j["direct"] = {{"value_re", d.value.real()}, {"value_im", d.value.imag()}};
  j["conv"] = {{"value_re", c.value.real()}, {"value_im", c.value.imag()}};
  const double rel = std::abs(d.value - c.value) / std::max(std::abs(d.value), 1e-300);
  j["relative_difference"] = std::isfinite(rel) ? rel : 0.0;
  if (d.exact_numerator && c.exact_numerator) {
    j["exact_match"] = *d.exact_numerator == *c.exact_numerator;
    j["exact_numerator"] = to_string(*d.exact_numerator);
  } else {
    j["exact_match"] = d.value == c.value;
  }
  j["within_tolerance"] = d.value == c.value || rel <= 1e-8;
  return j;
}

}  // namespace

json RunRecord::to_json() const {
  return {{"config", config}, {"result", result}, {"log", log}, {"wall_seconds", wall_seconds},
          {"version", kVersion}, {"seed", seed}};
}

json config_echo(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = experiment_name(cfg.experiment);
  j["specs"] = cfg.specs;
  j["X"] = cfg.X_values;
  j["H_expr"] = cfg.H_expr;
  j["H"] = cfg.H_values;
  j["Q_expr"] = cfg.Q_expr;
  j["Q"] = cfg.Q_values;
  j["epsilon"] = cfg.epsilon;
  j["eta"] = cfg.eta;
  j["N"] = cfg.N;
  j["method"] = cfg.method;
  j["kind"] = cfg.kind;
  j["c"] = cfg.c_values;
  j["series"] = cfg.series_path;
  j["output"] = cfg.output;
  j["csv"] = cfg.csv_output;
  j["coeff_cache"] = cfg.coeff_cache;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  return j;
}

std::int64_t clamp_Q(std::int64_t Q, std::int64_t H, double epsilon, std::vector<std::string>& log) {
  const auto limit = arcs::max_disjoint_Q(H, epsilon);
  if (Q <= limit) return Q;
  log.push_back("Q clamped from " + std::to_string(Q) + " to " + std::to_string(limit) +
                " so that major arcs of radius H^(-1+8 eps) stay disjoint (H = " + std::to_string(H) +
                ", eps = " + std::to_string(epsilon) + ")");
  return limit;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed for " + path.string());
}

RunRecord run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.threads > 0) set_thread_budget(cfg.threads);
  std::unique_ptr<multfunc::WindowCache> cache;
  if (!cfg.coeff_cache.empty()) cache = std::make_unique<multfunc::WindowCache>(cfg.coeff_cache);
  RunRecord rec;
  rec.config = config_echo(cfg);
  rec.seed = cfg.seed;
  switch (cfg.experiment) {
    case Experiment::Correlate: rec.result = run_correlate(cfg, cache.get(), rec.log); break;
    case Experiment::SingularSeries: rec.result = run_singular_series(cfg, cache.get()); break;
    case Experiment::ArcScan: rec.result = run_arc_scan(cfg, rec.log); break;
    case Experiment::MainTermTrend: rec.result = run_main_term_trend(cfg, cache.get(), rec.log); break;
    case Experiment::TripleCount: rec.result = run_triple_count(cfg, cache.get()); break;
    case Experiment::IdentityCheck: rec.result = run_identity_check(cfg, cache.get()); break;
  }
  for (const auto& id : cfg.specs) {
    if (spec_of(id).hypothesis_conditional()) {
      rec.log.push_back("spec '" + id + "' is hypothesis-conditional: its class membership is assumed, not proved");
    }
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!cfg.output.empty()) write_json(cfg.output, rec.to_json());
  return rec;
}

}  // namespace tc::harness
