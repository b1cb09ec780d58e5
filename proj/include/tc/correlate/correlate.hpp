#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "tc/common/arith.hpp"
#include "tc/dirichlet/singular_series.hpp"
#include "tc/multfunc/mult_spec.hpp"
#include "tc/multfunc/window.hpp"
#include "tc/multfunc/window_cache.hpp"

namespace tc::correlate {

enum class Method { Direct, Convolution };
enum class Weight { Fejer };

const char* method_name(Method m);

struct CorrelationRequest {
  multfunc::MultSpec spec1, spec2, spec3;
  std::int64_t X = 1;
  std::int64_t H = 1;
  Weight weight = Weight::Fejer;
};

struct CorrelationResult {
  std::complex<double> value;
  Method method = Method::Direct;
  std::array<std::string, 3> spec_ids;
  std::int64_t X = 0;
  std::int64_t H = 0;
  /// H * S(X,H) as an exact integer, for integer-valued inputs.
  std::optional<i128> exact_numerator;
  std::optional<double> main_term;
  std::optional<double> relative_gap;
  /// |S| / (X H^{1-eps}), reported for pole-free specs instead of a gap.
  std::optional<double> smallness_ratio;
  double seconds = 0.0;
};

/// The three sequences on [X - 2H, 2X + 2H]; positions below 1 read as zero.
struct CorrelationInput {
  multfunc::CoefficientWindow f1, f2, f3;
  std::int64_t X = 1;
  std::int64_t H = 1;
};

CorrelationInput load_windows(const CorrelationRequest& req, multfunc::WindowCache* cache = nullptr);

/// sum_{|h|<=H} (1 - |h|/H) sum_{X<=n<=2X} f1(n) f2(n+h) f3(n+2h), term by term.
/// `reverse` runs both loops backwards (used to probe summation-order sensitivity).
CorrelationResult ternary_direct(const CorrelationInput& in, bool reverse = false);
CorrelationResult ternary_direct(const CorrelationRequest& req, multfunc::WindowCache* cache = nullptr);

/// Same value through banded convolutions over n + m = 2r.
CorrelationResult ternary_convolution(const CorrelationInput& in);
CorrelationResult ternary_convolution(const CorrelationRequest& req, multfunc::WindowCache* cache = nullptr);

/// 2H - 2|h|: the overlap of the three shifted windows.
double fejer_overlap_weight(std::int64_t h, std::int64_t H);

/// Pole specs: main_term = X H sum phi(q) C_q^3 and relative_gap.
/// Pole-free specs: main_term = 0 and smallness_ratio = |S| / (X H^{1-eps}).
CorrelationResult compare_to_main_term(const CorrelationResult& result, const dirichlet::SingularSeries& series,
                                       std::int64_t X, std::int64_t H, double epsilon = 0.05);

struct TripleCountResult {
  double c = 0.0;
  std::int64_t count = 0;
  double normalized = 0.0;  // count / (X (2H + 1))
};

/// #{(n, h) : X <= n <= 2X, |h| <= H, |f(n) f(n+h) f(n+2h)| >= c}.
TripleCountResult count_triples(const multfunc::CoefficientWindow& window, std::int64_t X, std::int64_t H, double c);

}  // namespace tc::correlate
