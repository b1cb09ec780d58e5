#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "tc/multfunc/mult_spec.hpp"
#include "tc/multfunc/window.hpp"

namespace tc::multfunc {

/// Binary window file:
///   "MFW1" | kind tag | q0 | lo | hi        (u64 little-endian each)
///   values: f64 per entry, or (re, im) f64 pairs for complex kinds
///   exact kinds: an i64 per entry follows the doubles
struct WindowFileHeader {
  std::uint64_t kind_tag = 0;
  std::int64_t q0 = 1;
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

void write_window_file(const std::filesystem::path& path, const MultSpec& spec,
                       const CoefficientWindow& window);

/// Throws IoError on malformed files or a kind-tag mismatch.
CoefficientWindow read_window_file(const std::filesystem::path& path, const MultSpec& spec);

WindowFileHeader read_window_header(const std::filesystem::path& path);

/// Directory-backed cache keyed by (kind tag, q0, lo, hi). User rules are
/// never cached because the tag does not identify them.
class WindowCache {
 public:
  explicit WindowCache(std::filesystem::path dir);

  CoefficientWindow get(const MultSpec& spec, std::int64_t q0, std::int64_t lo, std::int64_t hi);
  std::filesystem::path path_for(const MultSpec& spec, std::int64_t q0, std::int64_t lo,
                                 std::int64_t hi) const;

 private:
  std::filesystem::path dir_;
};

/// Either the cache (when configured) or a direct sieve.
CoefficientWindow fetch_window(const MultSpec& spec, std::int64_t q0, std::int64_t lo,
                               std::int64_t hi, WindowCache* cache = nullptr);

}  // namespace tc::multfunc
