#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tc/arcs/arcs.hpp"
#include "tc/common/errors.hpp"
#include "tc/multfunc/sieve.hpp"

namespace tc::arcs {

namespace {

std::string fraction(std::int64_t a, std::int64_t q) { return std::to_string(a) + "/" + std::to_string(q); }

}  // namespace

double arc_radius(std::int64_t H, double epsilon) {
  return std::pow(static_cast<double>(H), -1.0 + 8.0 * epsilon);
}

ArcDecomposition decompose(std::int64_t Q, std::int64_t H, double epsilon) {
  if (Q < 2) throw ConfigError("decompose: Q must be >= 2 (got " + std::to_string(Q) + ")");
  if (H < 2) throw ConfigError("decompose: H must be >= 2 (got " + std::to_string(H) + ")");
  if (!(epsilon > 0.0 && epsilon < 0.125)) throw ConfigError("decompose: epsilon must lie in (0, 1/8)");
  ArcDecomposition dec;
  dec.Q = Q;
  dec.H = H;
  dec.epsilon = epsilon;
  dec.beta = arc_radius(H, epsilon);
  // Walk the Farey sequence of order Q - 1 from 0/1, checking each neighbour gap;
  // the gap next to 0/1 is the wrap-around gap next to 1/1 on the circle.
  const std::int64_t n = Q - 1;
  std::int64_t a = 0, b = 1, c = 1, d = n;
  while (c <= n) {
    const double gap = 1.0 / static_cast<double>(b * d);
    if (2.0 * dec.beta >= gap) {
      const std::int64_t pa = a == 0 ? 1 : a;
      throw ConfigError("major arcs around " + fraction(pa, b) + " and " + fraction(c, d) +
                        " overlap: 2*beta = " + std::to_string(2.0 * dec.beta) + " >= gap " + std::to_string(gap) +
                        " (Q = " + std::to_string(Q) + " is too large for H = " + std::to_string(H) + ")");
    }
    dec.major.push_back({c, d, static_cast<double>(c) / static_cast<double>(d), dec.beta});
    const std::int64_t k = (n + b) / d;
    const std::int64_t e = k * c - a, f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
  }
  return dec;
}

std::int64_t max_disjoint_Q(std::int64_t H, double epsilon) {
  const double beta = arc_radius(H, epsilon);
  if (2.0 * beta >= 1.0) throw ConfigError("max_disjoint_Q: beta too large for any decomposition");
  // Order n >= 2 has minimal neighbour gap 1/(n(n-1)); order 1 only the wrap gap 1.
  std::int64_t n = 1;
  while (2.0 * beta < 1.0 / static_cast<double>((n + 1) * n)) ++n;
  return n + 1;
}

NearestFraction nearest_fraction(std::int64_t Q, double alpha) {
  NearestFraction best;
  double best_dist = 2.0;
  for (std::int64_t q = 1; q < Q; ++q) {
    const double a = std::round(alpha * static_cast<double>(q));
    double g = alpha - a / static_cast<double>(q);
    g -= std::round(g);
    if (std::fabs(g) < best_dist - 1e-15) {
      best_dist = std::fabs(g);
      auto ai = static_cast<std::int64_t>(a) % q;
      if (ai <= 0) ai += q;
      const std::int64_t d = std::gcd(ai, q);
      best = {ai / d, q / d, g};
    }
  }
  return best;
}

bool in_major(const ArcDecomposition& dec, double alpha) {
  const auto nf = nearest_fraction(dec.Q, alpha);
  return std::fabs(nf.gamma) <= dec.beta;
}

TheoremBound theorem_bound(std::int64_t q, double gamma, double X, double H, double eta, int k, double epsilon) {
  TheoremBound b;
  const double base = static_cast<double>(q) * std::fabs(gamma) * X;
  const double first = base > 0.0 ? std::pow(base, 0.5 + epsilon * epsilon) * std::sqrt(H) : 0.0;
  const double second = std::pow(H, eta) * std::pow(std::log(X), static_cast<double>(k * k - 1));
  b.value = first + second;
  b.regime = std::fabs(gamma) * std::pow(H, eta - epsilon / 2.0) >= 10.0;
  return b;
}

double geometric_envelope(double beta) { return 1.0 / std::sin(std::numbers::pi * beta); }

double short_tail_companion(int k, std::int64_t x, std::int64_t H, double eta) {
  const auto span = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(H), eta)));
  const auto spec = multfunc::MultSpec::divisor(k);
  double total = 0.0;
  const std::int64_t lo1 = std::max<std::int64_t>(1, x - span);
  if (x >= 1) {
    for (const auto v : multfunc::sieve_window(spec, lo1, x).exact) total += static_cast<double>(v);
  }
  for (const auto v : multfunc::sieve_window(spec, x + H, x + H + span).exact) total += static_cast<double>(v);
  return total;
}

const char* arc_kind_name(ArcKind kind) { return kind == ArcKind::Major ? "major" : "minor"; }

}  // namespace tc::arcs
