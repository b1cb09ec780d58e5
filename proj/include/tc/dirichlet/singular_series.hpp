#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tc/dirichlet/characters.hpp"
#include "tc/multfunc/mult_spec.hpp"
#include "tc/multfunc/window_cache.hpp"

namespace tc::dirichlet {

struct MeanDensityResult {
  std::int64_t q0 = 1;
  std::int64_t q1 = 1;
  std::complex<double> estimate;
  double error_gap = 0.0;
  std::int64_t N_used = 0;
  bool expected_zero = false;  // pole-free spec against a principal character
};

/// Richardson-extrapolated mean of f(q0 n) chi(n) over n <= N, n coprime to q1:
/// estimate = 2 mean(N) - mean(N/2), error_gap = |mean(N) - mean(N/2)|.
MeanDensityResult mean_density(const multfunc::MultSpec& spec, std::int64_t q0, std::int64_t q1,
                               const DirichletCharacter& chi, std::int64_t N,
                               multfunc::WindowCache* cache = nullptr);

/// Same, on an already sieved window of f(q0 n) for n in [1, N].
MeanDensityResult mean_density(const multfunc::CoefficientWindow& window, std::int64_t q1,
                               const DirichletCharacter& chi, std::int64_t N, bool expected_zero);

struct CoefficientEstimate {
  std::complex<double> value;
  double error = 0.0;  // sum of the weighted density gaps
};

/// C_q = sum over q = q0 q1 of mu(q1) / (phi(q1) q0) * D(q0, q1) with D the
/// principal-character density.
CoefficientEstimate singular_coefficient_estimate(const multfunc::MultSpec& spec, std::int64_t q, std::int64_t N,
                                                  multfunc::WindowCache* cache = nullptr);
std::complex<double> singular_coefficient(const multfunc::MultSpec& spec, std::int64_t q, std::int64_t N);

/// The a-dependent coefficient with every character kept:
/// sum over q = q0 q1 of 1/(phi(q1) q0) sum_chi tau(conj chi) chi(a) D_chi(q0, q1).
/// Equals C_q when only principal characters carry density.
std::complex<double> additive_coefficient(const multfunc::MultSpec& spec, std::int64_t q, std::int64_t a,
                                          std::int64_t N);

struct SingularSeries {
  std::string spec_id;
  std::int64_t Q = 2;
  std::int64_t N = 0;
  std::vector<std::complex<double>> c_table;  // c_table[q - 1] = C_q
  std::vector<double> c_error;
  double series_value = 0.0;  // Re sum_{q<Q} phi(q) C_q^3
  double series_imag = 0.0;
  double tail_estimate = 0.0;
  double fit_c = 0.0;
  double fit_delta = 0.0;
  bool fit_ok = false;

  std::complex<double> C(std::int64_t q) const { return c_table[static_cast<std::size_t>(q - 1)]; }
};

SingularSeries singular_series_sum(const multfunc::MultSpec& spec, std::int64_t Q, std::int64_t N,
                                   multfunc::WindowCache* cache = nullptr);

/// sum_{q<Q} phi(q) C_q^3 from an existing table (Q <= series.Q).
std::complex<double> truncated_series(const SingularSeries& series, std::int64_t Q);

/// Fits |C_q| <= c q^{-1+delta} and fills fit_c, fit_delta, fit_ok, tail_estimate.
void fit_tail(SingularSeries& series);

void write_series_csv(const std::filesystem::path& path, const SingularSeries& series);
SingularSeries read_series_csv(const std::filesystem::path& path, const std::string& spec_id);

/// |sum_{n<=N} f(n) e(an/q) - character-side reconstruction|.
double twisted_progression_check(const multfunc::MultSpec& spec, std::int64_t q, std::int64_t a, std::int64_t N);

}  // namespace tc::dirichlet
