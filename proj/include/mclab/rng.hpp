#pragma once

// Counter-based random streams.
//
// A stream is identified by (seed, stream index). Its key is
//   key = splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019))
// and the i-th output (i = 0, 1, ...) is
//   splitmix64(key + (i + 1) * 0x9E3779B97F4A7C15)
// where splitmix64 is the finalizer
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31.
// Uniform doubles take the top 53 bits: (u >> 11) * 2^-53.
// Nothing here depends on <random> distributions, so any language can
// reproduce the same streams.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "group.hpp"

namespace mclab {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    ++counter_;
    return splitmix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t counter() const noexcept { return counter_; }

  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform in {0, ..., n - 1}; n > 0.
  std::size_t below(std::size_t n) noexcept {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Real and imaginary parts uniform in [-1, 1).
  complex unit_box() noexcept {
    const double re = uniform(-1.0, 1.0);
    return {re, uniform(-1.0, 1.0)};
  }

  /// Modulus uniform in [lo, hi), phase uniform.
  complex polar(double lo, double hi) noexcept {
    const double r = uniform(lo, hi);
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

template <class Tag>
IndexedValues<Tag> random_values(const FiniteAbelianGroup& g, CounterRng& rng) {
  IndexedValues<Tag> out(g);
  for (std::size_t i = 0; i < g.order(); ++i) out[i] = rng.unit_box();
  return out;
}

inline FunctionOnG random_function(const FiniteAbelianGroup& g, CounterRng& rng) {
  return random_values<FunctionTag>(g, rng);
}

}  // namespace mclab
