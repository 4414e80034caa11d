#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <ranges>
#include <unordered_set>
#include <vector>

#include "kron/combinatorics.hpp"
#include "kron/graph.hpp"
#include "kron/model.hpp"
#include "kron/random.hpp"
#include "kron/sampler.hpp"

namespace kron {

// Induced subgraph of a Kronecker sample on a sorted set of labels. The local
// graph indexes vertices by position in labels().
class LayerSubgraph {
 public:
  LayerSubgraph(int n, std::vector<std::uint64_t> labels, GraphStore local)
      : n_(n), labels_(std::move(labels)), local_(std::move(local)) {}

  [[nodiscard]] int dimension() const noexcept { return n_; }
  [[nodiscard]] std::span<const std::uint64_t> labels() const noexcept { return labels_; }
  [[nodiscard]] const GraphStore& graph() const noexcept { return local_; }
  [[nodiscard]] std::size_t vertex_count() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return local_.edge_count(); }

  [[nodiscard]] std::optional<vertex_t> index_of(std::uint64_t label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<vertex_t>(it - labels_.begin());
  }

  [[nodiscard]] bool contains(std::uint64_t label) const { return index_of(label).has_value(); }

  // Neighbor labels of a member label (empty for non-members).
  [[nodiscard]] std::vector<std::uint64_t> neighbors(std::uint64_t label) const {
    std::vector<std::uint64_t> out;
    if (auto i = index_of(label)) {
      for (vertex_t j : local_.neighbors(*i)) out.push_back(labels_[j]);
    }
    return out;
  }

  // Edges as label pairs, first < second, sorted.
  [[nodiscard]] std::vector<std::pair<std::uint64_t, std::uint64_t>> label_edges() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& [a, b] : local_.edges()) out.emplace_back(labels_[a], labels_[b]);
    return out;
  }

 private:
  int n_;
  std::vector<std::uint64_t> labels_;
  GraphStore local_;
};

namespace detail {

template <typename Adjacent>
LayerSubgraph build_layer(int n, std::vector<std::uint64_t> labels, Adjacent&& adjacent_labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<Edge> edges;
  for (vertex_t i = 0; i < labels.size(); ++i) {
    for (std::uint64_t y : adjacent_labels(labels[i])) {
      if (y <= labels[i]) continue;
      auto it = std::lower_bound(labels.begin(), labels.end(), y);
      if (it != labels.end() && *it == y) edges.emplace_back(i, static_cast<vertex_t>(it - labels.begin()));
    }
  }
  const std::size_t count = labels.size();
  return LayerSubgraph(n, std::move(labels), GraphStore::from_edges(count, std::move(edges)));
}

inline void require_even(int n) {
  if (n % 2 != 0) throw PreconditionError("middle-layer constructions require even n, got " + std::to_string(n));
}

}  // namespace detail

[[nodiscard]] inline LayerSubgraph induced_subgraph(const GraphStore& g, std::vector<std::uint64_t> labels) {
  return detail::build_layer(g.dimension(), std::move(labels), [&g](std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (vertex_t y : g.neighbors(static_cast<vertex_t>(x))) out.push_back(y);
    return out;
  });
}

[[nodiscard]] inline LayerSubgraph induced_subgraph(const LayerSubgraph& sub, std::vector<std::uint64_t> labels) {
  std::erase_if(labels, [&sub](std::uint64_t x) { return !sub.contains(x); });
  return detail::build_layer(sub.dimension(), std::move(labels),
                             [&sub](std::uint64_t x) { return sub.neighbors(x); });
}

// Keeps edges {x,y} (labels) for which keep(x, y) holds; vertex set unchanged.
template <typename Pred>
[[nodiscard]] LayerSubgraph filter_edges(const LayerSubgraph& sub, Pred&& keep) {
  std::vector<Edge> edges;
  for (const auto& [a, b] : sub.graph().edges()) {
    if (keep(sub.labels()[a], sub.labels()[b])) edges.emplace_back(a, b);
  }
  std::vector<std::uint64_t> labels(sub.labels().begin(), sub.labels().end());
  return LayerSubgraph(sub.dimension(), std::move(labels),
                       GraphStore::from_edges(sub.vertex_count(), std::move(edges)));
}

// Subgraph induced by all weight-n/2 vertices.
[[nodiscard]] inline LayerSubgraph middle_layer(const GraphStore& g) {
  const int n = g.dimension();
  detail::require_even(n);
  if (g.vertex_count() != (std::size_t{1} << n)) throw PreconditionError("middle_layer expects a full Kronecker sample");
  return induced_subgraph(g, comb::labels_of_weight(n, n / 2));
}

inline constexpr std::uint64_t kSplitSalt = 0x5350'4c49'5400'0001ULL;
inline constexpr std::uint64_t kThinSalt = 0x5448'494e'0000'0002ULL;

// Part index in [0, m) of edge {x,y}; uniform and independent across edges.
[[nodiscard]] inline std::size_t split_part_of(std::uint64_t x, std::uint64_t y, std::size_t m, SampleSeed seed) {
  const double u = rng::pair_uniform(rng::hash_words(seed.seed, seed.stream), x, y, kSplitSalt);
  return std::min(m - 1, static_cast<std::size_t>(u * static_cast<double>(m)));
}

[[nodiscard]] inline LayerSubgraph edge_split_part(const LayerSubgraph& sub, std::size_t m, std::size_t index,
                                                   SampleSeed seed) {
  if (m == 0) throw PreconditionError("edge_split needs at least one part");
  if (index >= m) throw PreconditionError("edge_split part index out of range");
  return filter_edges(sub, [&](std::uint64_t x, std::uint64_t y) { return split_part_of(x, y, m, seed) == index; });
}

// Labels every edge with one of m parts uniformly at random.
[[nodiscard]] inline std::vector<LayerSubgraph> edge_split(const LayerSubgraph& sub, std::size_t m, SampleSeed seed) {
  if (m == 0) throw PreconditionError("edge_split needs at least one part");
  std::vector<std::vector<Edge>> parts(m);
  for (const auto& [a, b] : sub.graph().edges()) {
    parts[split_part_of(sub.labels()[a], sub.labels()[b], m, seed)].emplace_back(a, b);
  }
  std::vector<LayerSubgraph> out;
  out.reserve(m);
  for (auto& edges : parts) {
    std::vector<std::uint64_t> labels(sub.labels().begin(), sub.labels().end());
    out.emplace_back(sub.dimension(), std::move(labels), GraphStore::from_edges(sub.vertex_count(), std::move(edges)));
  }
  return out;
}

// Weight-n/2 vertices with exactly |I|/2 ones on I = {i : u_i != v_i}.
[[nodiscard]] inline std::vector<std::uint64_t> u_i_subset(const VertexLabel& u, const VertexLabel& v) {
  const int n = u.dimension();
  detail::require_same_dimension(u, v);
  detail::require_even(n);
  if (weight(u) != n / 2 || weight(v) != n / 2) throw PreconditionError("u_i_subset requires w(u) = w(v) = n/2");
  const std::uint64_t I = u.bits() ^ v.bits();
  const int half = std::popcount(I) / 2;
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : comb::labels_of_weight(n, n / 2)) {
    if (std::popcount(x & I) == half) out.push_back(x);
  }
  return out;
}

// Required number of agreeing coordinates outside I for a balanced edge. Two
// U_I vertices with r common ones outside I also share r zeros there, so the
// count is 2r with r = round(alpha/(alpha+beta) * (n-|I|)/2).
[[nodiscard]] inline int balanced_agreement_target(const KroneckerParams& p, int n, int i_size) {
  const double share = p.alpha() / (p.alpha() + p.beta());
  return 2 * comb::round_half_even(share * (n - i_size) / 2.0);
}

[[nodiscard]] inline bool balanced_edge_filter(const KroneckerParams& p, std::uint64_t I, const VertexLabel& x,
                                               const VertexLabel& y) {
  detail::require_same_dimension(x, y);
  const int n = x.dimension();
  const std::uint64_t outside = ~I & VertexLabel::mask(n);
  const int agree = std::popcount(~(x.bits() ^ y.bits()) & outside);
  return agree == balanced_agreement_target(p, n, std::popcount(I));
}

// Common existence probability every balanced pair is thinned down to.
[[nodiscard]] inline double uniform_edge_probability(const KroneckerParams& p, int n, int i_size, std::size_t part_count) {
  const int r = balanced_agreement_target(p, n, i_size) / 2;
  const int rest = (n - i_size) - 2 * r;
  return detail::ipow(p.alpha(), r) * detail::ipow(p.gamma(), r) * detail::ipow(p.beta(), rest) *
         detail::ipow(std::min(p.alpha(), p.beta()), i_size) / static_cast<double>(part_count);
}

// Retains each edge of existence probability rho' = p_xy / m with probability
// rho / rho', so every surviving pair has probability exactly rho.
[[nodiscard]] inline LayerSubgraph uniform_thin(const KroneckerParams& p, std::uint64_t I, const LayerSubgraph& sub,
                                                std::size_t part_count, SampleSeed seed) {
  const int n = sub.dimension();
  const double rho = uniform_edge_probability(p, n, std::popcount(I), part_count);
  const std::uint64_t key = rng::hash_words(seed.seed, seed.stream);
  return filter_edges(sub, [&](std::uint64_t x, std::uint64_t y) {
    const double rho_prime = edge_probability(p, VertexLabel(x, n), VertexLabel(y, n)) / static_cast<double>(part_count);
    if (rho_prime < rho * (1.0 - 1e-12)) {
      throw Error("uniform_thin: pair probability below rho (x=" + std::to_string(x) + ", y=" + std::to_string(y) + ")");
    }
    return rng::pair_uniform(key, x, y, kThinSalt) < rho / rho_prime;
  });
}

// Law of |N(x)| in the thinned layer: Binomial(M, rho).
struct FirstLayerLaw {
  std::uint64_t trials = 0;  // M
  double rho = 0.0;
  [[nodiscard]] double mean() const { return static_cast<double>(trials) * rho; }
};

[[nodiscard]] inline FirstLayerLaw first_layer_law(const KroneckerParams& p, int n, int i_size, std::size_t part_count) {
  const int h = (n - i_size) / 2;
  const int r = balanced_agreement_target(p, n, i_size) / 2;
  FirstLayerLaw law;
  const std::uint64_t outside = comb::choose(h, r) * comb::choose(h, r);
  law.trials = outside * comb::choose(i_size, i_size / 2) - (r == h ? 1 : 0);
  law.rho = uniform_edge_probability(p, n, i_size, part_count);
  return law;
}

struct ThinnedLayer {
  std::uint64_t coordinates = 0;  // I
  LayerSubgraph graph;
};

// middle layer part -> induce on U_I -> balanced filter -> thin to rho.
[[nodiscard]] inline ThinnedLayer thinned_layer(const KroneckerParams& p, const LayerSubgraph& part,
                                                const VertexLabel& u, const VertexLabel& v, std::size_t part_count,
                                                SampleSeed seed) {
  const int n = part.dimension();
  const std::uint64_t I = u.bits() ^ v.bits();
  LayerSubgraph restricted = induced_subgraph(part, u_i_subset(u, v));
  LayerSubgraph balanced = filter_edges(restricted, [&](std::uint64_t x, std::uint64_t y) {
    return balanced_edge_filter(p, I, VertexLabel(x, n), VertexLabel(y, n));
  });
  return {I, uniform_thin(p, I, balanced, part_count, seed)};
}

inline void write_layer_edge_list(std::ostream& out, const LayerSubgraph& sub, EdgeListHeader header,
                                  const std::string& annotation) {
  header.n = sub.dimension();
  header.annotations.insert(header.annotations.begin(), "layer " + annotation);
  std::vector<Edge> edges;
  for (const auto& [x, y] : sub.label_edges()) edges.emplace_back(static_cast<vertex_t>(x), static_cast<vertex_t>(y));
  const auto relabeled = GraphStore::from_edges(std::size_t{1} << sub.dimension(), std::move(edges), sub.dimension());
  write_edge_list(out, relabeled, header);
}

// ---------------------------------------------------------------------------
// Neighborhood growth

template <typename S>
concept NeighborSource = requires(const S& s, std::uint64_t v) {
  { s.neighbors(v) } -> std::ranges::range;
};

// GraphStore indexes by vertex id; adapt it to the label-based interface.
struct GraphNeighbors {
  const GraphStore& g;
  [[nodiscard]] std::span<const vertex_t> neighbors(std::uint64_t v) const { return g.neighbors(static_cast<vertex_t>(v)); }
};

struct GrowthProfile {
  std::uint64_t source = 0;
  std::vector<std::uint64_t> sizes;  // |N_i(v)| for i = 0..kmax
  std::optional<int> J;              // first i >= 1 with sizes[i] <= xi^(n i / 2)
  double xi = 0.0;
};

template <NeighborSource S>
[[nodiscard]] GrowthProfile growth_profile(const S& source, std::uint64_t v, double xi, int kmax, int n) {
  GrowthProfile prof;
  prof.source = v;
  prof.xi = xi;
  prof.sizes.assign(static_cast<std::size_t>(kmax) + 1, 0);
  std::unordered_set<std::uint64_t> seen{v};
  std::vector<std::uint64_t> frontier{v};
  prof.sizes[0] = 1;
  for (int i = 1; i <= kmax && !frontier.empty(); ++i) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t x : frontier) {
      for (auto y : source.neighbors(x)) {
        if (seen.insert(static_cast<std::uint64_t>(y)).second) next.push_back(static_cast<std::uint64_t>(y));
      }
    }
    prof.sizes[static_cast<std::size_t>(i)] = next.size();
    frontier = std::move(next);
  }
  for (int i = 1; i <= kmax; ++i) {
    if (static_cast<double>(prof.sizes[static_cast<std::size_t>(i)]) <= std::pow(xi, n * i / 2.0)) {
      prof.J = i;
      break;
    }
  }
  return prof;
}

}  // namespace kron
