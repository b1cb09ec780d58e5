#include <algorithm>
#include <cmath>
#include <bit>
#include <numbers>

#include "tc/arcs/arcs.hpp"
#include "tc/common/convolution.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/limits.hpp"
#include "tc/common/parallel.hpp"
#include "tc/common/phase.hpp"

namespace tc::arcs {

namespace {

constexpr std::size_t kTop = 5;
constexpr int kRounds = 3;
constexpr int kRefineSteps = 10;

struct Candidate {
  double alpha;
  double abs_value;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.abs_value != b.abs_value) return a.abs_value > b.abs_value;
  return a.alpha < b.alpha;
}

void keep_top(std::vector<Candidate>& top, Candidate c) {
  top.push_back(c);
  std::sort(top.begin(), top.end(), better);
  if (top.size() > kTop) top.resize(kTop);
}

std::uint64_t next_pow2(std::uint64_t n) {
  std::uint64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Grid indices j (alpha = j / M) lying in a closed major arc.
std::vector<std::uint64_t> major_mask(const ArcDecomposition& dec, std::uint64_t M) {
  std::vector<std::uint64_t> bits((M + 63) / 64, 0);
  const long double m = static_cast<long double>(M);
  for (const auto& arc : dec.major) {
    const long double c = static_cast<long double>(arc.a) / static_cast<long double>(arc.q);
    const auto lo = static_cast<std::int64_t>(std::ceil((c - arc.radius) * m));
    const auto hi = static_cast<std::int64_t>(std::floor((c + arc.radius) * m));
    for (std::int64_t j = lo; j <= hi; ++j) {
      std::int64_t r = j % static_cast<std::int64_t>(M);
      if (r < 0) r += static_cast<std::int64_t>(M);
      bits[static_cast<std::size_t>(r) / 64] |= std::uint64_t{1} << (r % 64);
    }
  }
  return bits;
}

double to_domain(double alpha, std::int64_t Q) {
  alpha -= std::floor(alpha);
  if (alpha < 1.0 / static_cast<double>(Q)) alpha += 1.0;
  return alpha;
}

}  // namespace

SupScanReport sup_scan(const multfunc::CoefficientWindow& window, const ArcDecomposition& dec, std::int64_t x,
                       std::int64_t L, ArcKind kind, double eta, int k, double epsilon) {
  if (L < 0 || window.stride_base != 1 || !window.covers(x, x + L)) {
    throw DomainError("sup_scan: window does not cover [" + std::to_string(x) + ", " + std::to_string(x + L) + "]");
  }
  if (dec.major.empty()) throw ConfigError("sup_scan: decomposition has no major arcs");
  if (kind == ArcKind::Minor && 2.0 * dec.beta * static_cast<double>(dec.major.size()) >= 1.0) {
    throw ConfigError("sup_scan: the minor arcs are empty (beta = " + std::to_string(dec.beta) + ")");
  }

  SupScanReport rep;
  rep.kind = kind;
  rep.x = x;
  rep.L = L;
  rep.refinement_depth = kRounds;
  double trivial = 0.0;
  for (std::int64_t n = x; n <= x + L; ++n) trivial += std::abs(window.at(n));
  rep.trivial_bound = trivial;

  // |dS/dalpha| <= 2 pi (x + L) sum |f|: a spacing of 1e-2 / (2 pi (x + L)) keeps the
  // grid maximum within 1e-2 sum |f| of the true supremum.
  const double max_spacing = 1e-2 / (2.0 * std::numbers::pi * static_cast<double>(x + L));
  const std::uint64_t B = next_pow2(static_cast<std::uint64_t>(L) + 1);
  const std::uint64_t M = std::max(B, next_pow2(static_cast<std::uint64_t>(std::ceil(1.0 / max_spacing))));
  if (M > static_cast<std::uint64_t>(limits().max_scan_grid)) {
    throw ResourceError("sup_scan: grid of " + std::to_string(M) + " points exceeds budget " +
                        std::to_string(limits().max_scan_grid));
  }
  const std::uint64_t P = M / B;
  rep.spacing = 1.0 / static_cast<double>(M);
  rep.grid_points = static_cast<std::int64_t>(M);

  const auto mask = major_mask(dec, M);
  const auto allowed = [&](std::uint64_t j) {
    const bool major = (mask[j / 64] >> (j % 64)) & 1;
    return kind == ArcKind::Major ? major : !major;
  };

  // e(m / M) = coarse[m / K] * fine[m % K].
  const std::uint64_t K = std::uint64_t{1} << ((std::bit_width(M) - 1 + 1) / 2);
  std::vector<std::complex<double>> fine(K), coarse(M / K + 1);
  for (std::uint64_t i = 0; i < K; ++i) fine[i] = unit_phase_rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(M));
  for (std::uint64_t i = 0; i < coarse.size(); ++i) {
    coarse[i] = unit_phase_rational(static_cast<std::int64_t>((i * K) % M), static_cast<std::int64_t>(M));
  }
  std::vector<std::complex<double>> g(static_cast<std::size_t>(L + 1));
  for (std::int64_t t = 0; t <= L; ++t) g[static_cast<std::size_t>(t)] = window.at(x + t);

  // alpha = (v + P u) / M: for fixed v the u-sweep is one length-B transform of g(t) e(t v / M).
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(P, 256));
  std::vector<std::vector<Candidate>> chunk_top(chunks);
  std::vector<std::uint64_t> chunk_seen(chunks, 0);
  parallel_for(chunks, [&](std::size_t ci) {
    std::vector<std::complex<double>> buf(B);
    std::vector<Candidate> top;
    for (std::uint64_t v = ci; v < P; v += chunks) {
      std::fill(buf.begin(), buf.end(), std::complex<double>{});
      for (std::uint64_t t = 0; t < g.size(); ++t) {
        const std::uint64_t m = t * v;  // < B * P = M
        buf[t] = g[t] * (coarse[m / K] * fine[m % K]);
      }
      dft_inverse_kernel(buf);
      for (std::uint64_t u = 0; u < B; ++u) {
        const std::uint64_t j = v + P * u;
        if (!allowed(j)) continue;
        ++chunk_seen[ci];
        const double mag = std::abs(buf[u]);
        if (top.size() < kTop || mag > top.back().abs_value) {
          keep_top(top, {static_cast<double>(j) / static_cast<double>(M), mag});
        }
      }
    }
    chunk_top[ci] = std::move(top);
  });
  std::uint64_t seen = 0;
  std::vector<Candidate> top;
  for (std::size_t ci = 0; ci < chunks; ++ci) {
    seen += chunk_seen[ci];
    for (const auto& c : chunk_top[ci]) keep_top(top, c);
  }
  if (seen == 0) throw ConfigError(std::string("sup_scan: no grid point lies in the ") + arc_kind_name(kind) + " arcs");

  // Re-evaluate the grid leaders directly, then refine around the current leaders.
  const auto direct = [&](double alpha) { return std::abs(short_exp_sum(window, x, L, alpha).value); };
  for (auto& c : top) c.abs_value = direct(c.alpha);
  std::sort(top.begin(), top.end(), better);
  double sup = top.front().abs_value;
  double arg = top.front().alpha;
  rep.round_sups.push_back(sup);
  double step = rep.spacing;
  for (int round = 1; round <= kRounds; ++round) {
    step /= 10.0;
    std::vector<Candidate> next = top;
    for (const auto& c : top) {
      for (int i = -kRefineSteps; i <= kRefineSteps; ++i) {
        if (i == 0) continue;
        double alpha = c.alpha + i * step;
        alpha -= std::floor(alpha);
        if ((kind == ArcKind::Major) != in_major(dec, alpha)) continue;
        keep_top(next, {alpha, direct(alpha)});
      }
    }
    top = std::move(next);
    if (top.front().abs_value > sup) {
      sup = top.front().abs_value;
      arg = top.front().alpha;
    }
    rep.round_sups.push_back(sup);
  }

  rep.sup_abs = sup;
  rep.argmax_alpha = to_domain(arg, dec.Q);
  const auto nf = nearest_fraction(dec.Q, arg);
  rep.q = nf.q;
  rep.a = nf.a;
  rep.gamma = nf.gamma;
  const auto b = theorem_bound(nf.q, nf.gamma, static_cast<double>(x), static_cast<double>(dec.H), eta, k, epsilon);
  rep.bound_value = b.value;
  rep.regime = b.regime;
  rep.ratio = b.value > 0.0 ? sup / b.value : 0.0;
  for (const auto& c : top) rep.top.push_back({to_domain(c.alpha, dec.Q), c.abs_value});
  rep.companion = short_tail_companion(k, x, L, eta);
  return rep;
}

}  // namespace tc::arcs
