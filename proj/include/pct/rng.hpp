#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace pct {

// mt19937_64 with self-contained draw helpers. The standard pins the
// engine's output exactly; avoiding std::*_distribution keeps byte-level
// reproducibility across library implementations.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  bool coin() { return engine_() & 1; }

  // Uniform in [0, n) by rejection; n must be positive.
  uint64_t below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      uint64_t x = engine_();
      if (x < limit) return x % n;
    }
  }

  // Derive an independent stream for a sub-task; stable mixing so results
  // do not depend on evaluation order.
  static uint64_t mix(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace pct
