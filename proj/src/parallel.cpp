#include "wienerkit/parallel.hpp"

#include <cstdlib>
#include <string>

namespace wienerkit {

namespace {

unsigned default_threads() noexcept {
  if (const char* env = std::getenv("WIENERKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<unsigned> g_override{0};

}  // namespace

unsigned max_threads() noexcept {
  const unsigned o = g_override.load();
  if (o != 0) return o;
  static const unsigned d = default_threads();
  return d;
}

void set_max_threads(unsigned n) noexcept { g_override.store(n); }

}  // namespace wienerkit
