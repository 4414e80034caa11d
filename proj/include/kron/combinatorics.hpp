#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "kron/random.hpp"

namespace kron::comb {

// Pascal table up to 64 choose k; C(64,32) < 2^64 so every entry fits in u64.
inline const std::array<std::array<std::uint64_t, 65>, 65>& pascal() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int n = 0; n <= 64; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

[[nodiscard]] inline std::uint64_t choose(int n, int k) {
  if (k < 0 || n < 0 || k > n || n > 64) return 0;
  return pascal()[n][k];
}

[[nodiscard]] inline double choose_real(int n, int k) { return static_cast<double>(choose(n, k)); }

[[nodiscard]] inline double to_double(u128 x) { return static_cast<double>(x); }

// Positions of set bits in ascending order.
[[nodiscard]] inline std::vector<int> bit_positions(std::uint64_t bits) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(bits)));
  while (bits != 0) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

// Maps rank in [0, C(|positions|, k)) to a k-subset of positions (as a bitmask)
// via the combinatorial number system.
[[nodiscard]] inline std::uint64_t unrank_subset(std::uint64_t rank, int k, std::span<const int> positions) {
  std::uint64_t mask = 0;
  int m = static_cast<int>(positions.size());
  for (int remaining = k; remaining > 0; --remaining) {
    // largest c < m with C(c, remaining) <= rank
    int c = remaining - 1;
    while (c + 1 < m && choose(c + 1, remaining) <= rank) ++c;
    rank -= choose(c, remaining);
    mask |= std::uint64_t{1} << positions[static_cast<std::size_t>(c)];
    m = c;
  }
  return mask;
}

// Inverse of unrank_subset for a subset given as indexes into the positions list.
[[nodiscard]] inline std::uint64_t rank_subset(std::span<const int> indexes_ascending) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < indexes_ascending.size(); ++i) {
    rank += choose(indexes_ascending[i], static_cast<int>(i) + 1);
  }
  return rank;
}

// Next integer with the same popcount (Gosper's hack). Caller bounds the range.
[[nodiscard]] constexpr std::uint64_t next_same_weight(std::uint64_t x) noexcept {
  const std::uint64_t c = x & (0 - x);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// All n-bit labels with exactly k ones, ascending.
[[nodiscard]] inline std::vector<std::uint64_t> labels_of_weight(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > n) return out;
  out.reserve(choose(n, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n);
  for (std::uint64_t x = (std::uint64_t{1} << k) - 1; x < limit; x = next_same_weight(x)) {
    out.push_back(x);
    if (x == ((std::uint64_t{1} << k) - 1) << (n - k)) break;
  }
  return out;
}

// Round half to even.
[[nodiscard]] inline int round_half_even(double x) { return static_cast<int>(std::nearbyint(x)); }

}  // namespace kron::comb
