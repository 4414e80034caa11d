#include "catch_amalgamated.hpp"

#include <sstream>

#include "kron/graph.hpp"
#include "kron/sampler.hpp"
#include "kron/stats.hpp"

using namespace kron;
using Catch::Approx;

namespace {

// One Bernoulli draw per unordered pair.
GraphStore naive_graph(const KroneckerParams& p, int n, std::uint64_t key) {
  rng::CounterRng g(key);
  std::vector<Edge> edges;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t u = 0; u < count; ++u)
    for (std::uint64_t v = u + 1; v < count; ++v)
      if (g.uniform() < edge_probability(p, VertexLabel(u, n), VertexLabel(v, n)))
        edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
  return GraphStore::from_edges(count, std::move(edges), n);
}

std::string canonical(const GraphStore& g, std::uint64_t seed) {
  std::ostringstream out;
  EdgeListHeader h;
  h.n = g.dimension();
  h.seed = seed;
  write_edge_list(out, g, h);
  return out.str();
}

}  // namespace

TEST_CASE("signature classes partition the vertex set and sum to the degree identity") {
  const KroneckerParams p(0.6, 0.7, 0.45);
  for (int n = 1; n <= 20; ++n) {
    for (int w = 0; w <= n; ++w) {
      const VertexLabel v(VertexLabel::mask(w), n);
      u128 total = 0;
      double mass = 0.0;
      for (const auto& c : signature_classes(p, v)) {
        CHECK(c.size >= 1);
        CHECK(c.prob >= 0.0);
        CHECK(c.prob <= 1.0);
        total += c.size;
        mass += static_cast<double>(c.size) * c.prob;
      }
      CHECK(total == (u128{1} << n));
      const double expected = std::pow(1.3, w) * std::pow(0.7 + 0.45, n - w);
      CHECK(mass == Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("signature class examples") {
  const KroneckerParams p(0.6, 0.7, 0.45);
  const auto all_ones = signature_classes(p, VertexLabel(VertexLabel::mask(5), 5));
  REQUIRE(all_ones.size() == 6);
  for (const auto& c : all_ones) {
    CHECK(c.size == comb::choose(5, c.a));
    CHECK(c.prob == Approx(std::pow(0.6, c.a) * std::pow(0.7, 5 - c.a)));
  }
  const KroneckerParams flat(0.3, 0.3, 0.3);
  for (const auto& c : signature_classes(flat, VertexLabel(0b1011, 6))) CHECK(c.prob == Approx(std::pow(0.3, 6)));
}

TEST_CASE("sample_neighbors boundary cases") {
  const VertexLabel v(0b101100, 6);
  const auto all = sample_neighbors(KroneckerParams(1, 1, 1), v, {1, 1});
  CHECK(all.size() == 63);
  CHECK(std::find(all.begin(), all.end(), v.bits()) == all.end());
  CHECK(sample_neighbors(KroneckerParams(0, 0, 0), v, {1, 1}).empty());
  const auto n2 = sample_neighbors(KroneckerParams(1, 1, 1), VertexLabel(0, 2), {1, 1});
  CHECK(n2 == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("sample_neighbors mean degree matches the closed form", "[stat]") {
  const KroneckerParams p(0.6, 0.7, 0.6);
  const VertexLabel v(0b00001111, 8);
  std::vector<std::size_t> deg;
  for (std::uint64_t s = 0; s < 10000; ++s) deg.push_back(sample_neighbors(p, v, {5, s}).size());
  const auto sum = stats::summarize(deg);
  const double expected = std::pow(1.3, 8) - std::pow(0.6, 8);
  CHECK(stats::z_score(sum.mean, expected, sum.standard_error()) < 3.0);
}

TEST_CASE("sample_graph examples and limits") {
  const auto k = sample_graph(KroneckerParams(1, 1, 1), 5, {1, 2});
  CHECK(k == GraphStore::complete(32, 5));
  CHECK(sample_graph(KroneckerParams(0, 0, 0), 5, {1, 2}).edge_count() == 0);
  CHECK_THROWS_AS(sample_graph(KroneckerParams(0.5, 0.5, 0.5), 23, {1, 2}), ResourceLimit);
  CHECK_THROWS_AS(sample_graph(KroneckerParams(0.5, 0.5, 0.5), 0, {1, 2}), ResourceLimit);
}

TEST_CASE("identical seed and stream give byte-identical exports") {
  const KroneckerParams p(0.6, 0.7, 0.6);
  CHECK(canonical(sample_graph(p, 9, {42, 7}), 42) == canonical(sample_graph(p, 9, {42, 7}), 42));
  CHECK(canonical(sample_graph(p, 9, {42, 7}), 42) != canonical(sample_graph(p, 9, {42, 8}), 42));
  const LazyKronecker a(p, 8, {42, 7}), b(p, 8, {42, 7});
  CHECK(canonical(a.materialize(), 42) == canonical(b.materialize(), 42));
}

TEST_CASE("grouped sampler per-pair frequencies match edge probabilities", "[stat]") {
  const int n = 6;
  const KroneckerParams p(0.6, 0.5, 0.35);
  const std::uint64_t count = 64;
  const int trials = 100000;
  std::vector<std::uint32_t> hits(count * count, 0);
  for (int t = 0; t < trials; ++t) {
    const auto g = sample_graph(p, n, {99, static_cast<std::uint64_t>(t)});
    for (auto [u, v] : g.edges()) ++hits[u * count + v];
  }
  double worst = 0.0;
  for (std::uint64_t u = 0; u < count; ++u) {
    for (std::uint64_t v = u + 1; v < count; ++v) {
      const double q = edge_probability(p, VertexLabel(u, n), VertexLabel(v, n));
      const double se = std::sqrt(q * (1 - q) / trials);
      worst = std::max(worst, stats::z_score(hits[u * count + v] / double(trials), q, se));
    }
  }
  INFO("worst pair z = " << worst);
  CHECK(worst < 4.0);
}

TEST_CASE("grouped, lazy and naive samplers agree in distribution", "[stat]") {
  const int n = 7;
  const KroneckerParams p(0.6, 0.7, 0.6);
  std::vector<std::uint64_t> grouped, lazy, naive;
  std::vector<std::uint64_t> ge, ne;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto a = sample_graph(p, n, {1, s});
    const auto b = LazyKronecker(p, n, {2, s}).materialize();
    const auto c = naive_graph(p, n, rng::hash_words(3, s));
    const vertex_t probe = static_cast<vertex_t>(s % 128);
    grouped.push_back(a.degree(probe));
    lazy.push_back(b.degree(probe));
    naive.push_back(c.degree(probe));
    ge.push_back(a.edge_count());
    ne.push_back(c.edge_count());
  }
  CHECK(stats::chi_square_two_sample(grouped, naive).p_value > 0.001);
  CHECK(stats::chi_square_two_sample(lazy, naive).p_value > 0.001);
  const auto sg = stats::summarize(ge), sn = stats::summarize(ne);
  CHECK(std::fabs(sg.mean - sn.mean) < 3 * std::sqrt(sg.variance / 1000 + sn.variance / 1000));
}

TEST_CASE("lazy sampler is pair-consistent and bounded") {
  const KroneckerParams p(0.6, 0.7, 0.6);
  const LazyKronecker lazy(p, 9, {8, 1});
  CHECK(lazy.seed().seed == 8);
  const auto g = lazy.materialize();
  for (vertex_t v : {0U, 5U, 300U, 511U}) {
    const auto nb = lazy_neighborhood(p, VertexLabel(v, 9), {8, 1});
    auto expected = g.neighbors(v);
    CHECK(std::equal(nb.begin(), nb.end(), expected.begin(), expected.end()));
    for (auto u : nb) CHECK(lazy.has_edge(u, v));
  }
  CHECK(lazy_neighborhood(KroneckerParams(1, 1, 1), VertexLabel(3, 5), {1, 1}).size() == 31);
  CHECK_THROWS_AS(LazyKronecker(p, 31, {1, 1}), ResourceLimit);
}
