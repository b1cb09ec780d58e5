#include "tc/multfunc/window_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "tc/common/errors.hpp"
#include "tc/multfunc/sieve.hpp"

namespace tc::multfunc {

namespace {

constexpr std::array<char, 4> kMagic{'M', 'F', 'W', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is, const std::filesystem::path& path) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw IoError("truncated window file " + path.string());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, 8);
  put_u64(os, u);
}

double get_f64(std::istream& is, const std::filesystem::path& path) {
  const std::uint64_t u = get_u64(is, path);
  double x;
  std::memcpy(&x, &u, 8);
  return x;
}

WindowFileHeader read_header(std::istream& is, const std::filesystem::path& path) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kMagic) throw IoError("not a window file: " + path.string());
  WindowFileHeader h;
  h.kind_tag = get_u64(is, path);
  h.q0 = static_cast<std::int64_t>(get_u64(is, path));
  h.lo = static_cast<std::int64_t>(get_u64(is, path));
  h.hi = static_cast<std::int64_t>(get_u64(is, path));
  if (h.lo < 1 || h.hi < h.lo || h.q0 < 1) throw IoError("corrupt window header in " + path.string());
  return h;
}

}  // namespace

void write_window_file(const std::filesystem::path& path, const MultSpec& spec,
                       const CoefficientWindow& window) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), 4);
  put_u64(os, spec.kind_tag());
  put_u64(os, static_cast<std::uint64_t>(window.stride_base));
  put_u64(os, static_cast<std::uint64_t>(window.lo));
  put_u64(os, static_cast<std::uint64_t>(window.hi));
  const bool real = spec.is_real();
  for (const auto& z : window.values) {
    put_f64(os, z.real());
    if (!real) put_f64(os, z.imag());
  }
  if (spec.is_exact()) {
    for (const auto v : window.exact) put_u64(os, static_cast<std::uint64_t>(v));
  }
  if (!os) throw IoError("write failed for " + path.string());
}

WindowFileHeader read_window_header(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_header(is, path);
}

CoefficientWindow read_window_file(const std::filesystem::path& path, const MultSpec& spec) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  const WindowFileHeader h = read_header(is, path);
  if (h.kind_tag != spec.kind_tag()) {
    throw IoError("window file " + path.string() + " holds kind tag " + std::to_string(h.kind_tag) +
                  ", expected " + std::to_string(spec.kind_tag()));
  }
  CoefficientWindow w;
  w.lo = h.lo;
  w.hi = h.hi;
  w.stride_base = h.q0;
  const std::size_t n = static_cast<std::size_t>(h.hi - h.lo + 1);
  w.values.resize(n);
  const bool real = spec.is_real();
  for (std::size_t i = 0; i < n; ++i) {
    const double re = get_f64(is, path);
    const double im = real ? 0.0 : get_f64(is, path);
    w.values[i] = {re, im};
  }
  if (spec.is_exact()) {
    w.exact.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.exact[i] = static_cast<std::int64_t>(get_u64(is, path));
  }
  return w;
}

WindowCache::WindowCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::filesystem::path WindowCache::path_for(const MultSpec& spec, std::int64_t q0, std::int64_t lo,
                                            std::int64_t hi) const {
  return dir_ / ("w" + std::to_string(spec.kind_tag()) + "_" + std::to_string(q0) + "_" + std::to_string(lo) +
                 "_" + std::to_string(hi) + ".mfw");
}

CoefficientWindow WindowCache::get(const MultSpec& spec, std::int64_t q0, std::int64_t lo, std::int64_t hi) {
  if (spec.kind == Kind::UserEuler) return window_on_progression(spec, q0, lo, hi);
  const auto path = path_for(spec, q0, lo, hi);
  if (std::filesystem::exists(path)) return read_window_file(path, spec);
  CoefficientWindow w = window_on_progression(spec, q0, lo, hi);
  const auto tmp = path.string() + ".tmp";
  write_window_file(tmp, spec, w);
  std::filesystem::rename(tmp, path);
  return w;
}

CoefficientWindow fetch_window(const MultSpec& spec, std::int64_t q0, std::int64_t lo, std::int64_t hi,
                               WindowCache* cache) {
  if (cache) return cache->get(spec, q0, lo, hi);
  return window_on_progression(spec, q0, lo, hi);
}

}  // namespace tc::multfunc
