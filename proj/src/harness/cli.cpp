#include "tc/harness/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/parallel.hpp"
#include "tc/harness/acceptance.hpp"
#include "tc/harness/config.hpp"
#include "tc/harness/run.hpp"
#include "tc/multfunc/sieve.hpp"

namespace tc::harness {

namespace {

struct Common {
  std::string coeff_cache;
  std::size_t threads = 0;
};

class ConfigText {
 public:
  ConfigText& set(const std::string& key, const std::string& value) {
    if (!value.empty()) os_ << key << " = \"" << value << "\"\n";
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

int emit(const ExperimentConfig& base, const Common& common) {
  auto cfg = base;
  if (!common.coeff_cache.empty()) cfg.coeff_cache = common.coeff_cache;
  if (common.threads > 0) cfg.threads = common.threads;
  const auto rec = run(cfg);
  for (const auto& line : rec.log) std::cerr << "note: " << line << '\n';
  std::cout << rec.to_json().dump(2) << '\n';
  return 0;
}

int run_sieve(const std::string& spec_id, std::int64_t lo, std::int64_t hi, std::int64_t q0, const std::string& out) {
  const auto spec = multfunc::parse_spec_id(spec_id);
  if (lo < 1 || hi < lo || q0 < 1) throw ConfigError("sieve needs 1 <= lo <= hi and q0 >= 1");
  const auto w = multfunc::window_on_progression(spec, q0, lo, hi);
  double sum_re = 0.0, sum_im = 0.0, max_abs = 0.0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto v = w.at(n);
    sum_re += v.real();
    sum_im += v.imag();
    max_abs = std::max(max_abs, std::abs(v));
  }
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw IoError("cannot open " + out + " for writing");
    os << "n,re,im\n";
    os.precision(17);
    for (std::int64_t n = lo; n <= hi; ++n) os << n << ',' << w.at(n).real() << ',' << w.at(n).imag() << '\n';
    if (!os) throw IoError("write failed for " + out);
  }
  nlohmann::json j{{"spec", spec.id()}, {"q0", q0},           {"lo", lo},           {"hi", hi},
                   {"sum_re", sum_re}, {"sum_im", sum_im}, {"max_abs", max_abs}, {"exact", w.is_exact()}};
  if (spec.hypothesis_conditional()) j["note"] = "hypothesis-conditional";
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_accept(int only) {
  const auto ids = only > 0 ? std::vector<int>{only} : criterion_ids();
  bool all = true;
  for (const int id : ids) {
    const auto r = run_criterion(id);
    all = all && r.pass;
    std::cout << format_line(r) << std::endl;
  }
  return all ? 0 : 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Ternary correlations of multiplicative functions: numerical toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--coeff-cache", common.coeff_cache, "Directory for cached coefficient windows");
  app.add_option("--threads", common.threads, "Thread budget (overrides TC_THREADS)");

  std::string spec, X, H = "X^0.8", Q, method = "conv", kind = "minor", series, out, json_out, c = "0.001";
  std::string eps, eta, N;
  std::int64_t lo = 1, hi = 0, q0 = 1;
  int only = 0;
  std::string config_path;

  auto* sieve = app.add_subcommand("sieve", "Sieve a coefficient window");
  sieve->add_option("--spec", spec)->required();
  sieve->add_option("--lo", lo);
  sieve->add_option("--hi", hi)->required();
  sieve->add_option("--q0", q0, "Restrict to the progression n = q0 m");
  sieve->add_option("--out", out, "CSV of n,re,im");

  auto* ss = app.add_subcommand("singular-series", "Singular-series coefficients C_q");
  ss->add_option("--spec", spec)->required();
  ss->add_option("--Q", Q)->required();
  ss->add_option("--N", N);
  ss->add_option("--out", out, "CSV of q,re_Cq,im_Cq,err");
  ss->add_option("--json", json_out);

  auto* corr = app.add_subcommand("correlate", "Weighted ternary correlation S(X,H)");
  corr->add_option("--spec", spec, "One id or three comma-separated ids")->required();
  corr->add_option("--X", X)->required();
  corr->add_option("--H", H, "Integer or X^theta");
  corr->add_option("--method", method, "direct|conv");
  corr->add_option("--series", series, "Singular-series CSV for the main term");
  corr->add_option("--eps", eps);
  corr->add_option("--out", json_out);

  auto* arcs_cmd = app.add_subcommand("arcs", "Exponential sums on major and minor arcs");
  arcs_cmd->require_subcommand(1);
  auto* scan = arcs_cmd->add_subcommand("scan", "Sup of the short exponential sum over one arc family");
  scan->add_option("--spec", spec)->required();
  scan->add_option("--X", X)->required();
  scan->add_option("--H", H);
  scan->add_option("--Q", Q, "Integer, preset:thm13 or preset:thm14");
  scan->add_option("--eps", eps);
  scan->add_option("--eta", eta);
  scan->add_option("--kind", kind, "major|minor");
  scan->add_option("--out", out, "CSV of the top points");
  scan->add_option("--json", json_out);

  auto* trend = app.add_subcommand("main-term-trend", "Relative gap to the main term over several X");
  trend->add_option("--spec", spec)->required();
  trend->add_option("--X", X, "Comma-separated list")->required();
  trend->add_option("--H", H);
  trend->add_option("--Q", Q);
  trend->add_option("--N", N);
  trend->add_option("--eps", eps);
  trend->add_option("--method", method);
  trend->add_option("--out", json_out);

  auto* triples = app.add_subcommand("count-triples", "Count triples with |f f f| >= c");
  triples->add_option("--spec", spec)->required();
  triples->add_option("--X", X)->required();
  triples->add_option("--H", H);
  triples->add_option("--c", c, "Comma-separated thresholds");
  triples->add_option("--out", json_out);

  auto* ident = app.add_subcommand("identity-check", "Compare direct and convolution paths");
  ident->add_option("--spec", spec)->required();
  ident->add_option("--X", X)->required();
  ident->add_option("--H", H);
  ident->add_option("--out", json_out);

  auto* accept = app.add_subcommand("accept", "Run the acceptance suite");
  accept->add_option("--only", only, "Run a single criterion");

  auto* runc = app.add_subcommand("run", "Run an experiment from a key = value config file");
  runc->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.threads > 0) set_thread_budget(common.threads);
    if (*sieve) return run_sieve(spec, lo, hi, q0, out);
    if (*accept) return run_accept(only);
    if (*runc) {
      std::ifstream is(config_path);
      if (!is) throw IoError("cannot read config " + config_path);
      std::stringstream ss_text;
      ss_text << is.rdbuf();
      return emit(parse_config(ss_text.str()), common);
    }
    ConfigText t;
    if (*ss) {
      t.set("experiment", "singular_series").set("spec", spec).set("Q", Q).set("N", N).set("csv", out).set("output", json_out);
    } else if (*corr) {
      t.set("experiment", "correlate").set("spec", spec).set("X", X).set("H", H).set("method", method)
          .set("series", series).set("epsilon", eps).set("output", json_out);
    } else if (*scan) {
      t.set("experiment", "arc_scan").set("spec", spec).set("X", X).set("H", H).set("Q", Q).set("epsilon", eps)
          .set("eta", eta).set("kind", kind).set("csv", out).set("output", json_out);
    } else if (*trend) {
      t.set("experiment", "main_term_trend").set("spec", spec).set("X", X).set("H", H).set("Q", Q).set("N", N)
          .set("epsilon", eps).set("method", method).set("output", json_out);
    } else if (*triples) {
      t.set("experiment", "triple_count").set("spec", spec).set("X", X).set("H", H).set("c", c).set("output", json_out);
    } else if (*ident) {
      t.set("experiment", "identity_check").set("spec", spec).set("X", X).set("H", H).set("output", json_out);
    }
    return emit(parse_config(t.str()), common);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const SpecificationError& e) {
    std::cerr << "specification error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace tc::harness
