#include "tc/correlate/correlate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <span>

#include "tc/common/convolution.hpp"
#include "tc/common/errors.hpp"
#include "tc/common/parallel.hpp"
#include "tc/common/summation.hpp"

namespace tc::correlate {

using multfunc::CoefficientWindow;

namespace {

struct ExactTraits {
  using In = std::int64_t;
  using Acc = i128;
  static In read(const CoefficientWindow& w, std::int64_t p) { return p < w.lo ? 0 : w.exact_at(p); }
  static Acc mul(In x, In y) { return static_cast<Acc>(x) * y; }
  static std::vector<Acc> conv(std::span<const In> x, std::span<const In> y) { return convolve_exact(x, y); }
};

struct ComplexTraits {
  using In = std::complex<double>;
  using Acc = std::complex<double>;
  static In read(const CoefficientWindow& w, std::int64_t p) { return p < w.lo ? In{} : w.at(p); }
  static Acc mul(In x, In y) { return x * y; }
  static std::vector<Acc> conv(std::span<const In> x, std::span<const In> y) { return convolve_complex(x, y); }
};

constexpr std::size_t kTriangleNaive = 64;

template <class T>
bool all_zero(std::span<const T> v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x == T{}; });
}

// out[i + j] += x[i] y[j] over i < j, for |x| = |y| = n; out has room for 2n - 1.
template <class Tr>
void strict_upper_into(std::span<const typename Tr::In> x, std::span<const typename Tr::In> y, typename Tr::Acc* out) {
  const std::size_t n = x.size();
  if (n < 2 || all_zero(x) || all_zero(y)) return;
  if (n <= kTriangleNaive) {
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == typename Tr::In{}) continue;
      for (std::size_t j = i + 1; j < n; ++j) out[i + j] += Tr::mul(x[i], y[j]);
    }
    return;
  }
  const std::size_t mid = n / 2;
  strict_upper_into<Tr>(x.first(mid), y.first(mid), out);
  strict_upper_into<Tr>(x.subspan(mid), y.subspan(mid), out + 2 * mid);
  if (all_zero(x.first(mid)) || all_zero(y.subspan(mid))) return;
  const auto cross = Tr::conv(x.first(mid), y.subspan(mid));
  for (std::size_t k = 0; k < cross.size(); ++k) out[mid + k] += cross[k];
}

// band[s] = sum over i in [0, L), j in [0, 2L), 0 < j - i <= L of x[i] y[j].
template <class Tr>
std::vector<typename Tr::Acc> band(std::span<const typename Tr::In> x, std::span<const typename Tr::In> y) {
  using Acc = typename Tr::Acc;
  const std::size_t L = x.size();
  std::vector<Acc> out(3 * L, Acc{});
  if (all_zero(x)) return out;
  const auto y_same = y.first(L);
  const auto y_next = y.subspan(L, L);
  strict_upper_into<Tr>(x, y_same, out.data());
  if (!all_zero(y_next)) {
    const auto full = Tr::conv(x, y_next);
    for (std::size_t k = 0; k < full.size(); ++k) out[L + k] += full[k];
    std::vector<Acc> tri(2 * L, Acc{});
    strict_upper_into<Tr>(x, y_next, tri.data());
    for (std::size_t k = 0; k + 1 < 2 * L; ++k) out[L + k] -= tri[k];
  }
  return out;
}

template <class Tr>
struct Sequences {
  std::vector<typename Tr::In> a, b, c;  // a = f1 restricted to [X, 2X]
};

template <class Tr>
Sequences<Tr> layout(const CorrelationInput& in) {
  const std::int64_t base = in.X - 2 * in.H;
  const std::size_t len = static_cast<std::size_t>(in.X + 4 * in.H + 1);
  Sequences<Tr> s;
  s.a.assign(len, {});
  s.b.assign(len, {});
  s.c.assign(len, {});
  for (std::size_t i = 0; i < len; ++i) {
    const std::int64_t p = base + static_cast<std::int64_t>(i);
    if (p < 1) continue;
    if (p >= in.X && p <= 2 * in.X) s.a[i] = Tr::read(in.f1, p);
    s.b[i] = Tr::read(in.f2, p);
    s.c[i] = Tr::read(in.f3, p);
  }
  return s;
}

// H * S(X, H) by direct summation, one inner sum per shift.
template <class Tr>
typename Tr::Acc direct_numerator(const CorrelationInput& in, bool reverse) {
  using Acc = typename Tr::Acc;
  const auto s = layout<Tr>(in);
  const std::int64_t H = in.H;
  const std::size_t n_lo = static_cast<std::size_t>(2 * H);
  const std::size_t n_hi = static_cast<std::size_t>(2 * H + in.X);
  std::vector<Acc> inner(static_cast<std::size_t>(2 * H + 1));
  parallel_for(inner.size(), [&](std::size_t k) {
    const std::int64_t h = static_cast<std::int64_t>(k) - H;
    const auto at = [&](std::size_t n) {
      return Tr::mul(s.a[n], s.b[static_cast<std::size_t>(static_cast<std::int64_t>(n) + h)]) *
             s.c[static_cast<std::size_t>(static_cast<std::int64_t>(n) + 2 * h)];
    };
    if constexpr (std::is_same_v<Acc, i128>) {
      i128 t = 0;
      for (std::size_t n = n_lo; n <= n_hi; ++n) t += at(n);
      inner[k] = t;
    } else {
      CompensatedComplexSum t;
      if (reverse) {
        for (std::size_t n = n_hi + 1; n-- > n_lo;) t.add(at(n));
      } else {
        for (std::size_t n = n_lo; n <= n_hi; ++n) t.add(at(n));
      }
      inner[k] = t.value();
    }
  });
  if constexpr (std::is_same_v<Acc, i128>) {
    i128 total = 0;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      const std::int64_t h = static_cast<std::int64_t>(k) - H;
      total += static_cast<i128>(H - std::abs(h)) * inner[k];
    }
    return total;
  } else {
    CompensatedComplexSum total;
    for (std::size_t idx = 0; idx < inner.size(); ++idx) {
      const std::size_t k = reverse ? inner.size() - 1 - idx : idx;
      const std::int64_t h = static_cast<std::int64_t>(k) - H;
      total.add(static_cast<double>(H - std::abs(h)) * inner[k]);
    }
    return total.value();
  }
}

// H * S(X, H) through n + m = 2r. With n the f1 position, m the f3 position and
// r = (n + m) / 2 the f2 position, the weight is H - |r - n|. Pairs are handled
// per block of length L = 2H with positions measured from the block start so the
// weights stay of size O(H).
template <class Tr>
typename Tr::Acc convolution_numerator(const CorrelationInput& in) {
  using In = typename Tr::In;
  using Acc = typename Tr::Acc;
  const auto s = layout<Tr>(in);
  const std::int64_t H = in.H;
  const std::size_t len = s.a.size();
  const std::size_t L = static_cast<std::size_t>(2 * H);
  const std::size_t last = static_cast<std::size_t>(2 * H + in.X);  // last nonzero index of a
  const std::size_t blocks = last / L + 1;

  const auto slice = [&](const std::vector<In>& v, std::size_t from, std::size_t count, bool ramp) {
    std::vector<In> out(count, In{});
    for (std::size_t k = 0; k < count && from + k < len; ++k) {
      out[k] = v[from + k];
      if (ramp) out[k] *= static_cast<typename Tr::In>(static_cast<std::int64_t>(k));
    }
    return out;
  };

  std::vector<std::vector<Acc>> part(blocks);
  parallel_for(blocks, [&](std::size_t blk) {
    const std::size_t iB = blk * L;
    const auto a0 = slice(s.a, iB, L, false);
    const auto a1 = slice(s.a, iB, L, true);
    const auto c0 = slice(s.c, iB, L, false);
    const auto c2 = slice(s.c, iB, 2 * L, false);
    const auto a2 = slice(s.a, iB, 2 * L, false);
    const auto a2r = slice(s.a, iB, 2 * L, true);
    // m > n: weight H - (r - iB) + (n - iB).
    const auto p0 = band<Tr>(a0, c2);
    const auto p1 = band<Tr>(a1, c2);
    // n > m: weight H + (r - iB) - (n - iB).
    const auto q0 = band<Tr>(c0, a2);
    const auto q1 = band<Tr>(c0, a2r);
    std::vector<Acc> acc(3 * L / 2, Acc{});
    for (std::size_t sp = 0; sp < 3 * L; sp += 2) {
      const auto rl = static_cast<std::int64_t>(sp / 2);
      acc[sp / 2] = static_cast<Acc>(H - rl) * p0[sp] + p1[sp] + static_cast<Acc>(H + rl) * q0[sp] - q1[sp];
    }
    part[blk] = std::move(acc);
  });

  std::vector<Acc> acc(len, Acc{});
  for (std::size_t r = 0; r < len; ++r) acc[r] = static_cast<Acc>(H) * Tr::mul(s.a[r], s.c[r]);
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const std::size_t iB = blk * L;
    for (std::size_t k = 0; k < part[blk].size() && iB + k < len; ++k) acc[iB + k] += part[blk][k];
  }
  if constexpr (std::is_same_v<Acc, i128>) {
    i128 total = 0;
    for (std::size_t r = 0; r < len; ++r) total += static_cast<i128>(s.b[r]) * acc[r];
    return total;
  } else {
    CompensatedComplexSum total;
    for (std::size_t r = 0; r < len; ++r) total.add(s.b[r] * acc[r]);
    return total.value();
  }
}

void validate(const CorrelationInput& in) {
  if (in.X < 1 || in.H < 1 || in.H > in.X) {
    throw DomainError("correlation needs 1 <= H <= X (got X = " + std::to_string(in.X) + ", H = " +
                      std::to_string(in.H) + ")");
  }
  const std::int64_t lo = std::max<std::int64_t>(1, in.X - 2 * in.H);
  const std::int64_t hi = 2 * in.X + 2 * in.H;
  for (const auto* w : {&in.f1, &in.f2, &in.f3}) {
    if (w->stride_base != 1 || !w->covers(lo, hi)) {
      throw DomainError("correlation windows must cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

bool exact_input(const CorrelationInput& in) {
  return in.f1.is_exact() && in.f2.is_exact() && in.f3.is_exact();
}

template <class F>
CorrelationResult finish(const CorrelationInput& in, Method m, F&& numerator) {
  validate(in);
  const auto t0 = std::chrono::steady_clock::now();
  CorrelationResult r;
  r.method = m;
  r.X = in.X;
  r.H = in.H;
  if (exact_input(in)) {
    const i128 num = numerator(ExactTraits{});
    r.exact_numerator = num;
    r.value = static_cast<double>(static_cast<long double>(num) / static_cast<long double>(in.H));
  } else {
    r.value = numerator(ComplexTraits{}) / static_cast<double>(in.H);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CorrelationResult with_ids(CorrelationResult r, const CorrelationRequest& req, double load_seconds) {
  r.spec_ids = {req.spec1.id(), req.spec2.id(), req.spec3.id()};
  r.seconds += load_seconds;
  return r;
}

}  // namespace

const char* method_name(Method m) { return m == Method::Direct ? "direct" : "conv"; }

CorrelationInput load_windows(const CorrelationRequest& req, multfunc::WindowCache* cache) {
  if (req.X < 1 || req.H < 1 || req.H > req.X) {
    throw DomainError("correlation needs 1 <= H <= X (got X = " + std::to_string(req.X) + ", H = " +
                      std::to_string(req.H) + ")");
  }
  const std::int64_t lo = std::max<std::int64_t>(1, req.X - 2 * req.H);
  const std::int64_t hi = 2 * req.X + 2 * req.H;
  CorrelationInput in;
  in.X = req.X;
  in.H = req.H;
  in.f1 = multfunc::fetch_window(req.spec1, 1, lo, hi, cache);
  in.f2 = req.spec2 == req.spec1 ? in.f1 : multfunc::fetch_window(req.spec2, 1, lo, hi, cache);
  in.f3 = req.spec3 == req.spec1 ? in.f1
          : req.spec3 == req.spec2 ? in.f2
                                   : multfunc::fetch_window(req.spec3, 1, lo, hi, cache);
  return in;
}

CorrelationResult ternary_direct(const CorrelationInput& in, bool reverse) {
  return finish(in, Method::Direct, [&](auto traits) {
    return direct_numerator<decltype(traits)>(in, reverse);
  });
}

CorrelationResult ternary_convolution(const CorrelationInput& in) {
  return finish(in, Method::Convolution, [&](auto traits) {
    return convolution_numerator<decltype(traits)>(in);
  });
}

CorrelationResult ternary_direct(const CorrelationRequest& req, multfunc::WindowCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = load_windows(req, cache);
  const double load = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return with_ids(ternary_direct(in), req, load);
}

CorrelationResult ternary_convolution(const CorrelationRequest& req, multfunc::WindowCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = load_windows(req, cache);
  const double load = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return with_ids(ternary_convolution(in), req, load);
}

double fejer_overlap_weight(std::int64_t h, std::int64_t H) {
  if (H < 1 || std::abs(h) > H) {
    throw DomainError("fejer_overlap_weight: need |h| <= H (h = " + std::to_string(h) + ", H = " +
                      std::to_string(H) + ")");
  }
  return static_cast<double>(2 * H - 2 * std::abs(h));
}

CorrelationResult compare_to_main_term(const CorrelationResult& result, const dirichlet::SingularSeries& series,
                                       std::int64_t X, std::int64_t H, double epsilon) {
  const auto& ids = result.spec_ids;
  if (ids[0] != ids[1] || ids[1] != ids[2] || ids[0] != series.spec_id) {
    throw DomainError("compare_to_main_term: series for '" + series.spec_id + "' does not match specs '" + ids[0] +
                      "', '" + ids[1] + "', '" + ids[2] + "'");
  }
  const auto spec = multfunc::parse_spec_id(ids[0]);
  CorrelationResult out = result;
  if (spec.has_pole) {
    const double main = static_cast<double>(X) * static_cast<double>(H) * series.series_value;
    out.main_term = main;
    out.relative_gap = std::abs(result.value - main) / std::max(std::abs(main), 1.0);
  } else {
    out.main_term = 0.0;
    out.smallness_ratio =
        std::abs(result.value) / (static_cast<double>(X) * std::pow(static_cast<double>(H), 1.0 - epsilon));
  }
  return out;
}

}  // namespace tc::correlate
