#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace matchlab {

/// Counter-based generator: output i of stream (seed, key) is a SplitMix64
/// finalizer of a keyed counter, so streams can be split without sharing
/// state and any draw is reproducible from (seed, key, index).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t key = 0)
      : base_(mix(seed ^ mix(key + 0x9e3779b97f4a7c15ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix(base_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Independent child stream.
  Rng split(std::uint64_t key) const { return Rng(base_, key); }

  /// Uniform in [0, bound), bound > 0; rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do x = (*this)(); while (x >= limit);
    return x % bound;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace matchlab
