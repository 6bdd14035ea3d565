#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

namespace momo {

// Run-level random stream. All stochastic components draw exclusively from one
// of these, so a seed fully determines a run. The sampling routines below are
// written out instead of using <random> distributions, whose output is
// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 5489u) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    auto const bound = static_cast<std::uint64_t>(n);
    auto const limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  bool bernoulli(double p) { return uniform() < p; }

  template<typename It>
  void shuffle(It first, It last) {
    auto const n = static_cast<std::size_t>(last - first);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(first[i - 1], first[index(i)]);
    }
  }

private:
  std::mt19937_64 engine_;
};

} // namespace momo
