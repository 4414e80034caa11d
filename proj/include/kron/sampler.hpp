#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "kron/combinatorics.hpp"
#include "kron/graph.hpp"
#include "kron/model.hpp"
#include "kron/random.hpp"

namespace kron {

// Candidates x relative to v grouped by (a, b): a = ones of x on v's ones,
// b = ones of x on v's zeros. Every member shares one edge probability.
struct SignatureClass {
  int a = 0;
  int b = 0;
  u128 size = 0;
  double prob = 0.0;
};

[[nodiscard]] inline std::vector<SignatureClass> signature_classes(const KroneckerParams& p, const VertexLabel& v) {
  const int n = v.dimension();
  const int w = weight(v);
  std::vector<SignatureClass> out;
  out.reserve(static_cast<std::size_t>((w + 1) * (n - w + 1)));
  for (int a = 0; a <= w; ++a) {
    for (int b = 0; b <= n - w; ++b) {
      SignatureClass c;
      c.a = a;
      c.b = b;
      c.size = static_cast<u128>(comb::choose(w, a)) * comb::choose(n - w, b);
      c.prob = edge_probability(p, PairOverlap{a, (w - a) + b, (n - w) - b});
      out.push_back(c);
    }
  }
  return out;
}

inline constexpr int kDefaultGraphDimensionCap = 22;
inline constexpr int kLazyDimensionCap = 30;

namespace detail {

struct U128Hash {
  std::size_t operator()(u128 x) const noexcept {
    return rng::hash_words(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(x >> 64));
  }
};

// Label of the class member with the given rank; rank = i * C(n-w, b) + j
// where i ranks the a-subset of v's ones and j the b-subset of v's zeros.
inline std::uint64_t class_member(const SignatureClass& c, u128 rank, std::span<const int> ones,
                                  std::span<const int> zeros) {
  const std::uint64_t zero_ways = comb::choose(static_cast<int>(zeros.size()), c.b);
  const auto i = static_cast<std::uint64_t>(rank / zero_ways);
  const auto j = static_cast<std::uint64_t>(rank % zero_ways);
  return comb::unrank_subset(i, c.a, ones) | comb::unrank_subset(j, c.b, zeros);
}

// Appends k distinct uniformly chosen members of the class.
inline void select_members(rng::CounterRng& g, const SignatureClass& c, u128 k, std::span<const int> ones,
                           std::span<const int> zeros, std::vector<std::uint64_t>& out) {
  if (k == 0) return;
  if (2 * k >= c.size) {
    // selection sampling over the whole class
    u128 needed = k;
    for (u128 r = 0; r < c.size && needed > 0; ++r) {
      const u128 left = c.size - r;
      if (g.below(left) < needed) {
        out.push_back(class_member(c, r, ones, zeros));
        --needed;
      }
    }
    return;
  }
  std::unordered_set<u128, U128Hash> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  while (chosen.size() < k) {
    const u128 r = g.below(c.size);
    if (chosen.insert(r).second) out.push_back(class_member(c, r, ones, zeros));
  }
}

}  // namespace detail

// Independent Bernoulli(p_{u,v}) inclusion of every u != v, realized per class as
// Binomial(size, prob) followed by a uniform choice of that many members.
// Output sorted ascending.
[[nodiscard]] inline std::vector<std::uint64_t> sample_neighbors(const KroneckerParams& p, const VertexLabel& v,
                                                                 SampleSeed seed) {
  const int n = v.dimension();
  const auto ones = comb::bit_positions(v.bits());
  const auto zeros = comb::bit_positions(~v.bits() & VertexLabel::mask(n));
  const int w = static_cast<int>(ones.size());
  rng::CounterRng g(seed, v.bits());
  std::vector<std::uint64_t> out;
  for (const auto& c : signature_classes(p, v)) {
    if (c.a == w && c.b == 0) continue;  // the class {v}
    const u128 k = rng::binomial(g, c.size, c.prob);
    detail::select_members(g, c, k, ones, zeros, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Each unordered pair {u,v} is decided once, while processing min(u,v): that
// vertex's class sampling keeps only neighbors greater than itself.
[[nodiscard]] inline GraphStore sample_graph(const KroneckerParams& p, int n, SampleSeed seed,
                                             int cap = kDefaultGraphDimensionCap) {
  if (n < 1 || n > cap) {
    throw ResourceLimit("sample_graph: n=" + std::to_string(n) + " outside [1," + std::to_string(cap) + "]");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Edge> edges;
  for (std::uint64_t v = 0; v < count; ++v) {
    for (std::uint64_t u : sample_neighbors(p, VertexLabel(v, n), seed)) {
      if (u > v) edges.emplace_back(static_cast<vertex_t>(v), static_cast<vertex_t>(u));
    }
  }
  return GraphStore::from_edges(count, std::move(edges), n);
}

// Pair-consistent sampler: the indicator of {u,v} is a pure function of
// (seed, min(u,v), max(u,v)), so neighborhoods can be queried in any order
// without materializing the graph.
class LazyKronecker {
 public:
  LazyKronecker(KroneckerParams p, int n, SampleSeed seed) : params_(p), n_(n), seed_(seed) {
    if (n < 1 || n > kLazyDimensionCap) {
      throw ResourceLimit("lazy sampler: n=" + std::to_string(n) + " outside [1," +
                          std::to_string(kLazyDimensionCap) + "]");
    }
    key_ = rng::hash_words(seed.seed, seed.stream);
  }

  [[nodiscard]] int dimension() const noexcept { return n_; }
  [[nodiscard]] const KroneckerParams& params() const noexcept { return params_; }
  [[nodiscard]] SampleSeed seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t vertex_count() const noexcept { return std::uint64_t{1} << n_; }

  [[nodiscard]] bool has_edge(std::uint64_t u, std::uint64_t v) const {
    if (u == v) return false;
    const double prob = edge_probability(params_, VertexLabel(u, n_), VertexLabel(v, n_));
    return rng::pair_uniform(key_, u, v) < prob;
  }

  [[nodiscard]] std::vector<std::uint64_t> neighbors(std::uint64_t v) const {
    std::vector<std::uint64_t> out;
    const std::uint64_t count = vertex_count();
    for (std::uint64_t u = 0; u < count; ++u) {
      if (u != v && has_edge(u, v)) out.push_back(u);
    }
    return out;
  }

  [[nodiscard]] GraphStore materialize() const {
    const std::uint64_t count = vertex_count();
    std::vector<Edge> edges;
    for (std::uint64_t u = 0; u < count; ++u)
      for (std::uint64_t v = u + 1; v < count; ++v)
        if (has_edge(u, v)) edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
    return GraphStore::from_edges(count, std::move(edges), n_);
  }

 private:
  KroneckerParams params_;
  int n_;
  SampleSeed seed_;
  std::uint64_t key_ = 0;
};

[[nodiscard]] inline std::vector<std::uint64_t> lazy_neighborhood(const KroneckerParams& p, const VertexLabel& v,
                                                                  SampleSeed seed) {
  return LazyKronecker(p, v.dimension(), seed).neighbors(v.bits());
}

}  // namespace kron
