#include "tc/common/parallel.hpp"

#include <cstdlib>
#include <string>

namespace tc {

namespace {
std::atomic<std::size_t>& budget_override() {
  static std::atomic<std::size_t> value{0};
  return value;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("TC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}
}  // namespace

std::size_t thread_budget() {
  const std::size_t o = budget_override().load();
  if (o > 0) return o;
  static const std::size_t fallback = default_budget();
  return fallback;
}

void set_thread_budget(std::size_t n) { budget_override().store(n); }

}  // namespace tc
