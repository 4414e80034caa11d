#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace kron {

using u128 = unsigned __int128;

struct SampleSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace rng {

// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive combination of words into one 64-bit key.
[[nodiscard]] constexpr std::uint64_t hash_words(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

template <typename... Rest>
[[nodiscard]] constexpr std::uint64_t hash_words(std::uint64_t a, std::uint64_t b, Rest... rest) noexcept {
  return hash_words(hash_words(a, b), static_cast<std::uint64_t>(rest)...);
}

// 53-bit uniform in [0,1).
[[nodiscard]] constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform in [0,1) that is a pure function of (key, min(u,v), max(u,v), salt).
[[nodiscard]] constexpr double pair_uniform(std::uint64_t key, std::uint64_t u, std::uint64_t v,
                                            std::uint64_t salt = 0) noexcept {
  if (u > v) std::swap(u, v);
  return to_unit(hash_words(key, u, v, salt));
}

// Counter-based stream: the i-th output is mix64(key + i * golden).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}
  constexpr CounterRng(SampleSeed s, std::uint64_t sub) noexcept
      : key_(hash_words(s.seed, s.stream, sub)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return mix64(key_ ^ mix64(counter_++)); }

  // Uniform in [0,1).
  constexpr double uniform() noexcept { return to_unit((*this)()); }

  // Uniform in (0,1], safe for log().
  constexpr double uniform_pos() noexcept { return 1.0 - uniform(); }

  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire-style rejection on 128-bit product.
    u128 m = static_cast<u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  u128 below(u128 bound) noexcept {
    if (bound <= std::numeric_limits<std::uint64_t>::max()) {
      return below(static_cast<std::uint64_t>(bound));
    }
    const u128 top = bound - 1;
    int bits = 128;
    while (bits > 0 && ((top >> (bits - 1)) & 1U) == 0) --bits;
    const u128 mask = bits == 128 ? ~u128{0} : ((u128{1} << bits) - 1);
    for (;;) {
      u128 r = (static_cast<u128>((*this)()) << 64) | (*this)();
      r &= mask;
      if (r < bound) return r;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Exact Binomial(trials, p) by waiting times between successes: the gap before
// the next success is Geometric(p). Uses the complement when p > 1/2, so the
// expected cost is O(min(k, trials - k) + 1).
template <typename Rng>
[[nodiscard]] u128 binomial(Rng& g, u128 trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (p > 0.5) return trials - binomial(g, trials, 1.0 - p);
  const double log_q = std::log1p(-p);
  u128 successes = 0;
  u128 position = 0;  // trials consumed so far
  for (;;) {
    const double gap = std::floor(std::log(g.uniform_pos()) / log_q);
    const u128 remaining = trials - position;
    if (gap >= static_cast<double>(remaining)) break;
    position += static_cast<u128>(gap) + 1;
    ++successes;
    if (position >= trials) break;
  }
  return successes;
}

}  // namespace rng
}  // namespace kron
