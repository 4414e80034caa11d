#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kron/model.hpp"

namespace kron {

using vertex_t = std::uint32_t;
using Edge = std::pair<vertex_t, vertex_t>;

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Immutable undirected simple graph in CSR form. For Kronecker samples vertex
// ids are the integer labels and dimension() is n; for other graphs dimension()
// may be 0.
class GraphStore {
 public:
  GraphStore() = default;

  // Self-loops are rejected; duplicate and reversed edges collapse.
  static GraphStore from_edges(std::size_t vertex_count, std::vector<Edge> edges, int dimension = 0) {
    for (auto& e : edges) {
      if (e.first == e.second) throw PreconditionError("self-loop on vertex " + std::to_string(e.first));
      if (e.first >= vertex_count || e.second >= vertex_count) {
        throw PreconditionError("edge endpoint out of range");
      }
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    GraphStore g;
    g.dimension_ = dimension;
    g.offsets_.assign(vertex_count + 1, 0);
    for (const auto& [a, b] : edges) {
      ++g.offsets_[a + 1];
      ++g.offsets_[b + 1];
    }
    for (std::size_t i = 0; i < vertex_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.resize(edges.size() * 2);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
      g.targets_[fill[a]++] = b;
      g.targets_[fill[b]++] = a;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
      std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }
    g.edge_count_ = edges.size();
    return g;
  }

  static GraphStore complete(std::size_t vertex_count, int dimension = 0) {
    std::vector<Edge> edges;
    for (vertex_t u = 0; u < vertex_count; ++u)
      for (vertex_t v = u + 1; v < vertex_count; ++v) edges.emplace_back(u, v);
    return from_edges(vertex_count, std::move(edges), dimension);
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
  [[nodiscard]] int dimension() const noexcept { return dimension_; }

  [[nodiscard]] std::span<const vertex_t> neighbors(vertex_t v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  [[nodiscard]] std::size_t degree(vertex_t v) const { return offsets_[v + 1] - offsets_[v]; }

  [[nodiscard]] bool has_edge(vertex_t u, vertex_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Canonical edges (u < v), sorted.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (vertex_t u = 0; u < vertex_count(); ++u)
      for (vertex_t v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // CSR slot of the arc u->v; the graph must contain the edge.
  [[nodiscard]] std::size_t slot(vertex_t u, vertex_t v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
  }
  [[nodiscard]] std::size_t slot_begin(vertex_t v) const { return offsets_[v]; }

  bool operator==(const GraphStore&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<vertex_t> targets_;
  std::size_t edge_count_ = 0;
  int dimension_ = 0;
};

// ---------------------------------------------------------------------------
// Canonical edge-list text format
//
//   # kron n=<n> alpha=<a> beta=<b> gamma=<g> seed=<s>
//   u v
//   ...
// with u < v as integers, sorted. Layer exports add a "# layer ..." line.

struct EdgeListHeader {
  int n = 0;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> annotations;  // extra comment lines, without "# "
};

inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

inline void write_edge_list(std::ostream& out, const GraphStore& g, const EdgeListHeader& h) {
  out << "# kron n=" << h.n;
  if (h.alpha) out << " alpha=" << format_double(*h.alpha);
  if (h.beta) out << " beta=" << format_double(*h.beta);
  if (h.gamma) out << " gamma=" << format_double(*h.gamma);
  if (h.seed) out << " seed=" << *h.seed;
  out << '\n';
  for (const auto& a : h.annotations) out << "# " << a << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

struct EdgeList {
  EdgeListHeader header;
  GraphStore graph;
};

inline EdgeList read_edge_list(std::istream& in) {
  EdgeList result;
  bool have_header = false;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string tok;
      ss >> tok;
      if (tok == "kron" && !have_header) {
        have_header = true;
        while (ss >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) continue;
          const std::string key = tok.substr(0, eq);
          const std::string val = tok.substr(eq + 1);
          try {
            if (key == "n") result.header.n = std::stoi(val);
            else if (key == "alpha") result.header.alpha = std::stod(val);
            else if (key == "beta") result.header.beta = std::stod(val);
            else if (key == "gamma") result.header.gamma = std::stod(val);
            else if (key == "seed") result.header.seed = std::stoull(val);
          } catch (const std::exception&) {
            throw Error("edge list header: bad value for " + key + ": " + val);
          }
        }
      } else {
        auto first = line.find_first_not_of("# ");
        result.header.annotations.push_back(first == std::string::npos ? "" : line.substr(first));
      }
      continue;
    }
    std::istringstream ss(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(ss >> u >> v)) throw Error("edge list line " + std::to_string(line_no) + ": expected \"u v\"");
    edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
  }
  if (!have_header || result.header.n < 1 || result.header.n > 30) {
    throw Error("edge list missing \"# kron n=<n>\" header (n in [1,30])");
  }
  const std::size_t count = std::size_t{1} << result.header.n;
  result.graph = GraphStore::from_edges(count, std::move(edges), result.header.n);
  return result;
}

// ---------------------------------------------------------------------------
// Traversal

struct BfsResult {
  vertex_t source = 0;
  std::vector<std::uint32_t> dist;  // kUnreached for unreachable vertices
  std::size_t reached_count = 0;
  std::uint32_t eccentricity = 0;  // over reached vertices
};

inline BfsResult bfs(const GraphStore& g, vertex_t source) {
  if (source >= g.vertex_count()) throw PreconditionError("bfs source out of range");
  BfsResult r;
  r.source = source;
  r.dist.assign(g.vertex_count(), kUnreached);
  std::vector<vertex_t> queue;
  queue.reserve(g.vertex_count());
  queue.push_back(source);
  r.dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const vertex_t x = queue[head];
    const std::uint32_t dx = r.dist[x];
    for (vertex_t y : g.neighbors(x)) {
      if (r.dist[y] == kUnreached) {
        r.dist[y] = dx + 1;
        queue.push_back(y);
      }
    }
  }
  r.reached_count = queue.size();
  r.eccentricity = r.dist[queue.back()];
  return r;
}

struct Components {
  std::vector<std::uint32_t> label;  // component id per vertex, ids in order of first vertex
  std::vector<std::size_t> sizes;
  [[nodiscard]] std::size_t count() const noexcept { return sizes.size(); }
  [[nodiscard]] std::uint32_t largest() const {
    return static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  }
};

inline Components connected_components(const GraphStore& g) {
  Components c;
  c.label.assign(g.vertex_count(), kUnreached);
  std::vector<vertex_t> stack;
  for (vertex_t s = 0; s < g.vertex_count(); ++s) {
    if (c.label[s] != kUnreached) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    std::size_t size = 0;
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const vertex_t x = stack.back();
      stack.pop_back();
      ++size;
      for (vertex_t y : g.neighbors(x)) {
        if (c.label[y] == kUnreached) {
          c.label[y] = id;
          stack.push_back(y);
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

enum class DiameterMethod { kAllPairs, kIFub };

struct DiameterResult {
  std::uint32_t diameter = 0;          // of the largest component
  bool connected = false;
  std::size_t component_size = 0;
  DiameterMethod method = DiameterMethod::kAllPairs;
  std::size_t bfs_calls = 0;
};

// Largest components at or below this size use all-sources BFS.
inline constexpr std::size_t kAllPairsDiameterLimit = 1024;

namespace detail {

inline vertex_t max_degree_vertex(const GraphStore& g, const Components& c, std::uint32_t comp) {
  vertex_t best = 0;
  std::size_t best_deg = 0;
  bool found = false;
  for (vertex_t v = 0; v < g.vertex_count(); ++v) {
    if (c.label[v] != comp) continue;
    if (!found || g.degree(v) > best_deg) {
      best = v;
      best_deg = g.degree(v);
      found = true;
    }
  }
  return best;
}

inline vertex_t farthest(const BfsResult& r) {
  vertex_t best = r.source;
  for (vertex_t v = 0; v < r.dist.size(); ++v)
    if (r.dist[v] != kUnreached && r.dist[v] > r.dist[best]) best = v;
  return best;
}

}  // namespace detail

inline DiameterResult diameter_all_pairs(const GraphStore& g) {
  DiameterResult out;
  if (g.vertex_count() == 0) return out;
  const Components c = connected_components(g);
  const auto comp = c.largest();
  out.connected = c.count() == 1;
  out.component_size = c.sizes[comp];
  out.method = DiameterMethod::kAllPairs;
  for (vertex_t v = 0; v < g.vertex_count(); ++v) {
    if (c.label[v] != comp) continue;
    out.diameter = std::max(out.diameter, bfs(g, v).eccentricity);
    ++out.bfs_calls;
  }
  return out;
}

// Exact diameter of the largest component. iFUB: BFS from a central vertex u,
// then process BFS levels of u from the deepest fringe upward; once the best
// eccentricity found exceeds 2(i-1), no vertex above level i can beat it.
inline DiameterResult diameter_ifub(const GraphStore& g) {
  if (g.vertex_count() == 0) return {};
  const Components c = connected_components(g);
  const auto comp = c.largest();

  DiameterResult out;
  out.connected = c.count() == 1;
  out.component_size = c.sizes[comp];
  out.method = DiameterMethod::kIFub;

  // double sweep from the highest-degree vertex, then start at the middle of a-b
  const vertex_t r = detail::max_degree_vertex(g, c, comp);
  const vertex_t a = detail::farthest(bfs(g, r));
  const BfsResult from_a = bfs(g, a);
  const vertex_t b = detail::farthest(from_a);
  const BfsResult from_b = bfs(g, b);
  out.bfs_calls = 3;
  const std::uint32_t ab = from_a.dist[b];
  vertex_t u = a;
  for (vertex_t x = 0; x < g.vertex_count(); ++x) {
    if (from_a.dist[x] != kUnreached && from_a.dist[x] + from_b.dist[x] == ab && from_a.dist[x] == ab / 2) {
      u = x;
      break;
    }
  }

  const BfsResult from_u = bfs(g, u);
  ++out.bfs_calls;
  std::vector<std::vector<vertex_t>> fringe(from_u.eccentricity + 1);
  for (vertex_t x = 0; x < g.vertex_count(); ++x)
    if (from_u.dist[x] != kUnreached) fringe[from_u.dist[x]].push_back(x);

  std::uint32_t lb = std::max(from_u.eccentricity, ab);
  std::uint32_t i = from_u.eccentricity;
  std::uint32_t ub = 2 * i;
  while (ub > lb && i > 0) {
    std::uint32_t best = 0;
    for (vertex_t x : fringe[i]) {
      best = std::max(best, bfs(g, x).eccentricity);
      ++out.bfs_calls;
      if (std::max(lb, best) >= 2 * i) break;  // cannot exceed 2i
    }
    lb = std::max(lb, best);
    if (lb > 2 * (i - 1)) break;
    ub = 2 * (i - 1);
    --i;
  }
  out.diameter = lb;
  return out;
}

// All-pairs BFS for small components, iFUB above kAllPairsDiameterLimit.
inline DiameterResult diameter_exact(const GraphStore& g) {
  if (g.vertex_count() == 0) return {};
  const Components c = connected_components(g);
  if (c.sizes[c.largest()] <= kAllPairsDiameterLimit) return diameter_all_pairs(g);
  return diameter_ifub(g);
}

// Greedy lower bound on the number of edge-disjoint u-v paths of length at most
// maxlen: repeatedly take a shortest admissible path and delete its edges.
inline std::size_t edge_disjoint_short_paths(const GraphStore& g, vertex_t u, vertex_t v, std::uint32_t maxlen) {
  if (u >= g.vertex_count() || v >= g.vertex_count()) throw PreconditionError("path endpoint out of range");
  if (u == v) throw PreconditionError("edge_disjoint_short_paths requires u != v");

  std::vector<char> removed(2 * g.edge_count(), 0);
  std::vector<std::uint32_t> dist(g.vertex_count());
  std::vector<std::size_t> via(g.vertex_count());  // slot of the arc used to enter
  std::vector<vertex_t> parent(g.vertex_count());
  std::vector<vertex_t> queue;
  std::size_t found = 0;
  for (;;) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    queue.clear();
    queue.push_back(u);
    dist[u] = 0;
    for (std::size_t head = 0; head < queue.size() && dist[v] == kUnreached; ++head) {
      const vertex_t x = queue[head];
      if (dist[x] >= maxlen) break;
      const auto nb = g.neighbors(x);
      const std::size_t base = g.slot_begin(x);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const vertex_t y = nb[k];
        if (removed[base + k] || dist[y] != kUnreached) continue;
        dist[y] = dist[x] + 1;
        via[y] = base + k;
        parent[y] = x;
        queue.push_back(y);
      }
    }
    if (dist[v] == kUnreached || dist[v] > maxlen) return found;
    ++found;
    for (vertex_t y = v; y != u; y = parent[y]) {
      removed[via[y]] = 1;
      removed[g.slot(y, parent[y])] = 1;
    }
  }
}

}  // namespace kron
