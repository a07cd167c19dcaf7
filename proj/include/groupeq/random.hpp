#pragma once

#include <cstdint>
#include <random>

namespace groupeq {

/// Seeded generator shared by tests, stream generators and the CLI.
/// Distributions are written out by hand so that a seed reproduces the same
/// draws regardless of the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  bool coin(unsigned num = 1, unsigned den = 2) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace groupeq
