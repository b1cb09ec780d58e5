#include "tc/dirichlet/singular_series.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "tc/common/arith.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/parallel.hpp"
#include "tc/common/phase.hpp"
#include "tc/common/summation.hpp"
#include "tc/multfunc/sieve.hpp"

namespace tc::dirichlet {

using multfunc::CoefficientWindow;
using multfunc::MultSpec;

namespace {

constexpr std::int64_t kMinDensityN = 10000;

void check_density_args(std::int64_t q0, std::int64_t q1, const DirichletCharacter& chi, std::int64_t N) {
  if (q0 < 1 || q1 < 1) throw DomainError("mean_density: q0 and q1 must be >= 1");
  if (chi.q != q1) {
    throw DomainError("mean_density: character modulus " + std::to_string(chi.q) + " differs from q1 = " +
                      std::to_string(q1));
  }
  if (N < kMinDensityN) throw DomainError("mean_density: N must be >= 10^4");
}

DirichletCharacter conjugate(const DirichletCharacter& chi) {
  DirichletCharacter c = chi;
  for (auto& v : c.values) v = std::conj(v);
  return c;
}

std::complex<double> character_sum(const CoefficientWindow& w, const DirichletCharacter& chi, std::int64_t M) {
  CompensatedComplexSum s;
  for (std::int64_t n = 1; n <= M; ++n) {
    const auto c = chi(n);
    if (c != 0.0) s.add(w.at(n) * c);
  }
  return s.value();
}

}  // namespace

MeanDensityResult mean_density(const CoefficientWindow& window, std::int64_t q1, const DirichletCharacter& chi,
                               std::int64_t N, bool expected_zero) {
  check_density_args(window.stride_base, q1, chi, N);
  if (!window.covers(1, N)) throw DomainError("mean_density: window does not cover [1, N]");
  const std::int64_t half = N / 2;
  CompensatedComplexSum s;
  std::complex<double> at_half;
  for (std::int64_t n = 1; n <= N; ++n) {
    const auto c = chi(n);
    if (c != 0.0) s.add(window.at(n) * c);
    if (n == half) at_half = s.value();
  }
  const std::complex<double> mean_n = s.value() / static_cast<double>(N);
  const std::complex<double> mean_half = at_half / static_cast<double>(half);
  MeanDensityResult r;
  r.q0 = window.stride_base;
  r.q1 = q1;
  r.estimate = 2.0 * mean_n - mean_half;
  r.error_gap = std::abs(mean_n - mean_half);
  r.N_used = N;
  r.expected_zero = expected_zero;
  return r;
}

MeanDensityResult mean_density(const MultSpec& spec, std::int64_t q0, std::int64_t q1, const DirichletCharacter& chi,
                               std::int64_t N, multfunc::WindowCache* cache) {
  check_density_args(q0, q1, chi, N);
  const auto w = multfunc::fetch_window(spec, q0, 1, N, cache);
  return mean_density(w, q1, chi, N, !spec.has_pole && chi.is_principal);
}

CoefficientEstimate singular_coefficient_estimate(const MultSpec& spec, std::int64_t q, std::int64_t N,
                                                  multfunc::WindowCache* cache) {
  if (q < 1) throw DomainError("singular_coefficient: q must be >= 1");
  CoefficientEstimate out;
  for (const auto d : divisors(static_cast<std::uint64_t>(q))) {
    const auto q0 = static_cast<std::int64_t>(d);
    const std::int64_t q1 = q / q0;
    const int mu = moebius(static_cast<std::uint64_t>(q1));
    if (mu == 0) continue;
    const auto D = mean_density(spec, q0, q1, principal_character(q1), N, cache);
    const double w = static_cast<double>(mu) / (static_cast<double>(euler_phi(static_cast<std::uint64_t>(q1))) *
                                                 static_cast<double>(q0));
    out.value += w * D.estimate;
    out.error += std::abs(w) * D.error_gap;
  }
  return out;
}

std::complex<double> singular_coefficient(const MultSpec& spec, std::int64_t q, std::int64_t N) {
  return singular_coefficient_estimate(spec, q, N).value;
}

std::complex<double> additive_coefficient(const MultSpec& spec, std::int64_t q, std::int64_t a, std::int64_t N) {
  if (q < 1) throw DomainError("additive_coefficient: q must be >= 1");
  if (std::gcd(a, q) != 1) throw DomainError("additive_coefficient: gcd(a, q) must be 1");
  std::complex<double> total;
  for (const auto d : divisors(static_cast<std::uint64_t>(q))) {
    const auto q0 = static_cast<std::int64_t>(d);
    const std::int64_t q1 = q / q0;
    const auto w = multfunc::window_on_progression(spec, q0, 1, N);
    const auto group = characters_mod(q1);
    const double norm = static_cast<double>(euler_phi(static_cast<std::uint64_t>(q1))) * static_cast<double>(q0);
    for (const auto& chi : group.characters) {
      const auto D = mean_density(w, q1, chi, N, false);
      total += gauss_sum(conjugate(chi)) * chi(a) * D.estimate / norm;
    }
  }
  return total;
}

SingularSeries singular_series_sum(const MultSpec& spec, std::int64_t Q, std::int64_t N,
                                   multfunc::WindowCache* cache) {
  if (Q < 2) throw DomainError("singular_series_sum: Q must be >= 2");
  SingularSeries s;
  s.spec_id = spec.id();
  s.Q = Q;
  s.N = N;
  const auto count = static_cast<std::size_t>(Q - 1);

  // One window per q0, shared by every q1 with q0 q1 < Q.
  std::vector<std::vector<std::complex<double>>> value_part(count, std::vector<std::complex<double>>(count));
  std::vector<std::vector<double>> error_part(count, std::vector<double>(count));
  parallel_for(count, [&](std::size_t i) {
    const std::int64_t q0 = static_cast<std::int64_t>(i) + 1;
    const auto w = multfunc::fetch_window(spec, q0, 1, N, cache);
    for (std::int64_t q1 = 1; q0 * q1 < Q; ++q1) {
      const int mu = moebius(static_cast<std::uint64_t>(q1));
      if (mu == 0) continue;
      const auto D = mean_density(w, q1, principal_character(q1), N, !spec.has_pole);
      const double weight = static_cast<double>(mu) /
                            (static_cast<double>(euler_phi(static_cast<std::uint64_t>(q1))) * static_cast<double>(q0));
      const auto q = static_cast<std::size_t>(q0 * q1 - 1);
      value_part[i][q] = weight * D.estimate;
      error_part[i][q] = std::abs(weight) * D.error_gap;
    }
  });
  s.c_table.assign(count, 0.0);
  s.c_error.assign(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t q = 0; q < count; ++q) {
      s.c_table[q] += value_part[i][q];
      s.c_error[q] += error_part[i][q];
    }
  }
  const auto total = truncated_series(s, Q);
  s.series_value = total.real();
  s.series_imag = total.imag();
  fit_tail(s);
  return s;
}

std::complex<double> truncated_series(const SingularSeries& series, std::int64_t Q) {
  if (Q > series.Q) throw DomainError("truncated_series: Q exceeds the computed table");
  CompensatedComplexSum s;
  for (std::int64_t q = 1; q < Q; ++q) {
    const auto c = series.C(q);
    s.add(static_cast<double>(euler_phi(static_cast<std::uint64_t>(q))) * c * c * c);
  }
  return s.value();
}

void fit_tail(SingularSeries& series) {
  std::vector<double> xs, ys;
  for (std::int64_t q = 1; q < series.Q; ++q) {
    const double mag = std::abs(series.C(q));
    const double err = series.c_error[static_cast<std::size_t>(q - 1)];
    if (mag == 0.0 || mag < 10.0 * err) continue;
    xs.push_back(std::log(static_cast<double>(q)));
    ys.push_back(std::log(mag));
  }
  series.fit_ok = false;
  series.fit_c = 0.0;
  series.fit_delta = 0.0;
  series.tail_estimate = 0.0;
  if (xs.size() < 2) return;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return;
  const double slope = sxy / sxx;
  double log_c = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) log_c = std::max(log_c, ys[i] - slope * xs[i]);
  series.fit_delta = slope + 1.0;
  series.fit_c = std::exp(log_c);
  // sum_{q>=Q} q (c q^{-1+delta})^3 = c^3 sum q^{-s}, s = 2 - 3 delta
  const double s = 2.0 - 3.0 * series.fit_delta;
  if (s <= 1.0) {
    series.tail_estimate = std::numeric_limits<double>::infinity();
    return;
  }
  const double Q = static_cast<double>(series.Q);
  const double c3 = series.fit_c * series.fit_c * series.fit_c;
  series.tail_estimate = c3 * (std::pow(Q, -s) + std::pow(Q, 1.0 - s) / (s - 1.0));
  series.fit_ok = true;
}

void write_series_csv(const std::filesystem::path& path, const SingularSeries& series) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "q,re_Cq,im_Cq,err\n";
  os.precision(17);
  for (std::int64_t q = 1; q < series.Q; ++q) {
    const auto c = series.C(q);
    os << q << ',' << c.real() << ',' << c.imag() << ',' << series.c_error[static_cast<std::size_t>(q - 1)] << '\n';
  }
  if (!os) throw IoError("write failed for " + path.string());
}

SingularSeries read_series_csv(const std::filesystem::path& path, const std::string& spec_id) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  SingularSeries s;
  s.spec_id = spec_id;
  std::string line;
  std::getline(is, line);
  if (line.rfind("q,re_Cq,im_Cq,err", 0) != 0) throw IoError("unexpected series header in " + path.string());
  std::int64_t expected = 1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field[4];
    for (auto& f : field) {
      if (!std::getline(ls, f, ',')) throw IoError("malformed series row in " + path.string() + ": " + line);
    }
    try {
      if (std::stoll(field[0]) != expected) throw IoError("series rows must list q = 1, 2, ... in order");
      s.c_table.emplace_back(std::stod(field[1]), std::stod(field[2]));
      s.c_error.push_back(std::stod(field[3]));
    } catch (const std::logic_error&) {
      throw IoError("malformed series row in " + path.string() + ": " + line);
    }
    ++expected;
  }
  if (s.c_table.empty()) throw IoError("empty series file " + path.string());
  s.Q = expected;
  const auto total = truncated_series(s, s.Q);
  s.series_value = total.real();
  s.series_imag = total.imag();
  fit_tail(s);
  return s;
}

double twisted_progression_check(const MultSpec& spec, std::int64_t q, std::int64_t a, std::int64_t N) {
  if (q < 1 || N < 1) throw DomainError("twisted_progression_check: q and N must be >= 1");
  if (std::gcd(a, q) != 1) {
    throw DomainError("twisted_progression_check: gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  }
  const auto w = multfunc::sieve_window(spec, 1, N);
  CompensatedComplexSum additive;
  for (std::int64_t n = 1; n <= N; ++n) additive.add(w.at(n) * unit_phase_rational(static_cast<std::int64_t>(mul_residue(a, n, static_cast<std::uint64_t>(q))), q));

  CompensatedComplexSum character_side;
  for (const auto d : divisors(static_cast<std::uint64_t>(q))) {
    const auto q0 = static_cast<std::int64_t>(d);
    const std::int64_t q1 = q / q0;
    const std::int64_t M = N / q0;
    if (M < 1) continue;
    const auto wq = multfunc::window_on_progression(spec, q0, 1, M);
    const double phi = static_cast<double>(euler_phi(static_cast<std::uint64_t>(q1)));
    for (const auto& chi : characters_mod(q1).characters) {
      character_side.add(gauss_sum(conjugate(chi)) * chi(a) * character_sum(wq, chi, M) / phi);
    }
  }
  return std::abs(additive.value() - character_side.value());
}

}  // namespace tc::dirichlet
