#pragma once

#include <cstdint>
#include <vector>

#include "topogrey/rational.hpp"

namespace topogrey {

/// Deterministic splitmix64 stream; identical across platforms, which keeps
/// seeded reports byte-reproducible.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  /// Inclusive range.
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

  /// Uniform k/q for k in [0, q].
  Rational01 rational(std::int64_t q) { return Rational01(static_cast<std::int64_t>(below(static_cast<std::uint64_t>(q + 1))), q); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(below(v.size()))];
  }

  /// Derives an independent per-instance stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x2545f4914f6cdd1dull * (index + 1)));
    return r.next();
  }
};

}  // namespace topogrey
