#include "catch_amalgamated.hpp"

#include "kron/model.hpp"

using namespace kron;
using Catch::Approx;

namespace {

// Coordinate-by-coordinate product of the 2x2 initiator entries.
double literal_product(const KroneckerParams& p, std::uint64_t u, std::uint64_t v, int n) {
  double prod = 1.0;
  for (int i = 0; i < n; ++i) {
    const bool a = (u >> i) & 1U;
    const bool b = (v >> i) & 1U;
    prod *= a && b ? p.alpha() : (a != b ? p.beta() : p.gamma());
  }
  return prod;
}

}  // namespace

TEST_CASE("params reject entries outside the unit interval and gamma above alpha") {
  CHECK_NOTHROW(KroneckerParams(0.6, 0.7, 0.6));
  CHECK_NOTHROW(KroneckerParams(0, 0, 0));
  CHECK_NOTHROW(KroneckerParams(1, 1, 1));
  CHECK_THROWS_AS(KroneckerParams(1.1, 0.5, 0.1), PreconditionError);
  CHECK_THROWS_AS(KroneckerParams(0.5, -0.1, 0.1), PreconditionError);
  CHECK_THROWS_AS(KroneckerParams(0.5, 0.5, 0.6), PreconditionError);
  CHECK_THROWS_AS(KroneckerParams(std::nan(""), 0.5, 0.1), PreconditionError);
}

TEST_CASE("labels keep only the low n bits") {
  CHECK_NOTHROW(VertexLabel(0b1111, 4));
  CHECK_THROWS_AS(VertexLabel(0b10000, 4), PreconditionError);
  CHECK_THROWS_AS(VertexLabel(0, 0), PreconditionError);
  CHECK_THROWS_AS(VertexLabel(0, 64), PreconditionError);
  CHECK_NOTHROW(VertexLabel(~std::uint64_t{0} >> 1, 63));
}

TEST_CASE("weight") {
  CHECK(weight(VertexLabel(0b111111, 6)) == 6);
  CHECK(weight(VertexLabel(0, 6)) == 0);
  CHECK(weight(parse_label("10110", 5)) == 3);
}

TEST_CASE("hamming and complement") {
  CHECK(hamming(parse_label("1100", 4), parse_label("1010", 4)) == 2);
  CHECK_THROWS_AS(hamming(VertexLabel(1, 4), VertexLabel(1, 5)), DimensionMismatch);
  CHECK(format_label(complement(parse_label("101", 3))) == "010");
  const VertexLabel v = parse_label("000011", 6);
  CHECK(weight(complement(v)) == 4);
  CHECK(complement(complement(v)) == v);
}

TEST_CASE("overlap counts sum to n and c10 is the Hamming distance") {
  const int n = 7;
  for (std::uint64_t u = 0; u < (1U << n); u += 3) {
    for (std::uint64_t v = 0; v < (1U << n); v += 5) {
      const auto o = overlap(VertexLabel(u, n), VertexLabel(v, n));
      CHECK(o.c11 + o.c10 + o.c00 == n);
      CHECK(o.c10 == hamming(VertexLabel(u, n), VertexLabel(v, n)));
    }
  }
}

TEST_CASE("edge probability examples") {
  const KroneckerParams p(0.5, 0.4, 0.3);
  CHECK(edge_probability(p, parse_label("1100", 4), parse_label("1010", 4)) == Approx(0.024).margin(1e-15));

  const KroneckerParams b1(0.3, 1.0, 0.0);
  const VertexLabel v = parse_label("1101001", 7);
  CHECK(edge_probability(b1, v, complement(v)) == 1.0);

  const KroneckerParams flat(0.7, 0.7, 0.7);
  CHECK(edge_probability(flat, VertexLabel(5, 6), VertexLabel(40, 6)) == Approx(std::pow(0.7, 6)).epsilon(1e-15));
  CHECK_THROWS_AS(edge_probability(p, VertexLabel(1, 4), VertexLabel(1, 5)), DimensionMismatch);
}

TEST_CASE("edge probability equals the literal product, is symmetric and monotone") {
  const int n = 8;
  const KroneckerParams p(0.55, 0.35, 0.2);
  const KroneckerParams q(0.6, 0.35, 0.25);
  for (std::uint64_t u = 0; u < (1U << n); ++u) {
    for (std::uint64_t v = u; v < (1U << n); v += 7) {
      const VertexLabel a(u, n), b(v, n);
      const double e = edge_probability(p, a, b);
      CHECK(std::fabs(e - literal_product(p, u, v, n)) <= 1e-15);
      CHECK(e == edge_probability(p, b, a));
      CHECK(edge_probability(q, a, b) >= e);
    }
  }
}

TEST_CASE("label text forms") {
  CHECK(parse_label("1100", 4).bits() == 12);
  CHECK(parse_label("0b1100", 6).bits() == 12);
  CHECK(parse_label("12", 6).bits() == 12);
  CHECK(format_label(VertexLabel(12, 4)) == "1100");
  CHECK(format_label(VertexLabel(12, 6)) == "001100");
  CHECK_THROWS_AS(parse_label("0b11001", 4), PreconditionError);
  CHECK_THROWS_AS(parse_label("x1", 4), PreconditionError);
  CHECK_THROWS_AS(parse_label("16", 4), PreconditionError);
}
