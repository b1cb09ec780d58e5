#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tc/multfunc/mult_spec.hpp"
#include "tc/multfunc/window.hpp"

namespace tc::arcs {

struct MajorArc {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double center = 1.0;  // a / q in (0, 1]
  double radius = 0.0;
};

/// Arcs of radius beta = H^{-1+8 eps} around a/q, q < Q, on the circle [1/Q, 1 + 1/Q).
struct ArcDecomposition {
  std::int64_t Q = 2;
  std::int64_t H = 2;
  double epsilon = 0.05;
  double beta = 0.0;
  std::vector<MajorArc> major;  // sorted by center
  double domain_lo() const { return 1.0 / static_cast<double>(Q); }
  double domain_hi() const { return 1.0 + 1.0 / static_cast<double>(Q); }
};

double arc_radius(std::int64_t H, double epsilon);

/// Throws ConfigError naming the first overlapping pair.
ArcDecomposition decompose(std::int64_t Q, std::int64_t H, double epsilon);

/// Largest Q for which decompose(Q, H, epsilon) has disjoint arcs (at least 2).
std::int64_t max_disjoint_Q(std::int64_t H, double epsilon);

struct NearestFraction {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double gamma = 0.0;  // alpha - a/q, reduced to (-1/2, 1/2]
};

/// Closest a/q with q < Q to alpha on the circle (ties go to the smaller q).
NearestFraction nearest_fraction(std::int64_t Q, double alpha);

/// Whether alpha (mod 1) lies in a major arc.
bool in_major(const ArcDecomposition& dec, double alpha);

struct ExpSumSample {
  std::int64_t x = 0;
  double alpha = 0.0;
  std::complex<double> value;
  double trivial_bound = 0.0;  // sum of |f| over the window
};

/// sum_{x <= n <= x + L} f(n) e(n alpha).
ExpSumSample short_exp_sum(const multfunc::CoefficientWindow& window, std::int64_t x, std::int64_t L, double alpha);

struct TheoremBound {
  double value = 0.0;
  bool regime = false;  // |gamma| H^{eta - eps/2} >= 10
};

/// (q |gamma| X)^{1/2 + eps^2} H^{1/2} + H^eta (log X)^{k^2 - 1}.
TheoremBound theorem_bound(std::int64_t q, double gamma, double X, double H, double eta, int k, double epsilon);

/// Geometric-sum envelope for f = 1 at distance >= beta from the integers: 1 / sin(pi beta).
double geometric_envelope(double beta);

/// E(x, H) = sum of d_k(m) over [x - H^eta, x] and [x + H, x + H + H^eta].
double short_tail_companion(int k, std::int64_t x, std::int64_t H, double eta);

enum class ArcKind { Major, Minor };
const char* arc_kind_name(ArcKind kind);

struct ScanPoint {
  double alpha = 0.0;
  double abs_value = 0.0;
};

struct SupScanReport {
  ArcKind kind = ArcKind::Minor;
  std::int64_t x = 0;
  std::int64_t L = 0;
  double sup_abs = 0.0;
  double argmax_alpha = 0.0;
  std::int64_t q = 1;
  std::int64_t a = 1;
  double gamma = 0.0;
  double bound_value = 0.0;
  bool regime = false;
  double ratio = 0.0;
  double trivial_bound = 0.0;
  double spacing = 0.0;
  std::int64_t grid_points = 0;
  int refinement_depth = 3;
  std::vector<double> round_sups;  // after the grid, then after each refinement round
  std::vector<ScanPoint> top;      // final leading points
  double companion = 0.0;          // E(x, L)
};

/// Sup of |S_f(alpha; x)| over the requested arc set: certified grid, then
/// three rounds of local refinement around the five best points.
SupScanReport sup_scan(const multfunc::CoefficientWindow& window, const ArcDecomposition& dec, std::int64_t x,
                       std::int64_t L, ArcKind kind, double eta, int k, double epsilon);

struct MajorArcModel {
  std::complex<double> model;
  std::complex<double> actual;
  double residual = 0.0;
};

/// C_q times the integral of e(gamma y) over [x, x + 2H], against S_f(a/q + gamma; x) with L = 2H.
MajorArcModel major_arc_model(const multfunc::CoefficientWindow& window, std::complex<double> C_q, std::int64_t q,
                              std::int64_t a, double gamma, std::int64_t x, std::int64_t H);
MajorArcModel major_arc_model(const multfunc::MultSpec& spec, std::complex<double> C_q, std::int64_t q,
                              std::int64_t a, double gamma, std::int64_t x, std::int64_t H);

}  // namespace tc::arcs
