#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kron {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMaxDimension = 63;

// Symmetric 2x2 initiator matrix
//        1      0
//   1  alpha  beta
//   0  beta   gamma
// with the standing assumption gamma <= alpha.
class KroneckerParams {
 public:
  KroneckerParams(double alpha, double beta, double gamma)
      : alpha_(alpha), beta_(beta), gamma_(gamma) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(alpha) || !in_unit(beta) || !in_unit(gamma)) {
      throw PreconditionError("kronecker params must lie in [0,1]: alpha=" + std::to_string(alpha) +
                              " beta=" + std::to_string(beta) + " gamma=" + std::to_string(gamma));
    }
    if (gamma > alpha) {
      throw PreconditionError("kronecker params require gamma <= alpha");
    }
  }

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }

  bool operator==(const KroneckerParams&) const = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
};

// An n-bit vertex label. Only the low n bits may be set.
class VertexLabel {
 public:
  VertexLabel(std::uint64_t bits, int n) : bits_(bits), n_(n) {
    if (n < 1 || n > kMaxDimension) {
      throw PreconditionError("label dimension must be in [1,63], got " + std::to_string(n));
    }
    if ((bits & ~mask(n)) != 0) {
      throw PreconditionError("label has bits set above dimension " + std::to_string(n));
    }
  }

  static constexpr std::uint64_t mask(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  [[nodiscard]] std::uint64_t bits() const noexcept { return bits_; }
  [[nodiscard]] int dimension() const noexcept { return n_; }

  bool operator==(const VertexLabel&) const = default;
  auto operator<=>(const VertexLabel& o) const { return bits_ <=> o.bits_; }

 private:
  std::uint64_t bits_;
  int n_;
};

struct PairOverlap {
  int c11 = 0;  // both bits 1
  int c10 = 0;  // exactly one bit 1
  int c00 = 0;  // both bits 0
};

namespace detail {
inline void require_same_dimension(const VertexLabel& u, const VertexLabel& v) {
  if (u.dimension() != v.dimension()) {
    throw DimensionMismatch("labels have different dimensions: " + std::to_string(u.dimension()) +
                            " vs " + std::to_string(v.dimension()));
  }
}

// p^k with p^0 = 1 (also for p = 0).
inline double ipow(double p, int k) noexcept {
  return k == 0 ? 1.0 : std::pow(p, k);
}
}  // namespace detail

[[nodiscard]] inline int weight(const VertexLabel& v) noexcept { return std::popcount(v.bits()); }

[[nodiscard]] inline int hamming(const VertexLabel& u, const VertexLabel& v) {
  detail::require_same_dimension(u, v);
  return std::popcount(u.bits() ^ v.bits());
}

[[nodiscard]] inline VertexLabel complement(const VertexLabel& v) {
  return VertexLabel(~v.bits() & VertexLabel::mask(v.dimension()), v.dimension());
}

[[nodiscard]] inline PairOverlap overlap(const VertexLabel& u, const VertexLabel& v) {
  detail::require_same_dimension(u, v);
  const int n = u.dimension();
  PairOverlap o;
  o.c11 = std::popcount(u.bits() & v.bits());
  o.c10 = std::popcount(u.bits() ^ v.bits());
  o.c00 = n - o.c11 - o.c10;
  return o;
}

[[nodiscard]] inline double edge_probability(const KroneckerParams& p, const PairOverlap& o) noexcept {
  return detail::ipow(p.alpha(), o.c11) * detail::ipow(p.beta(), o.c10) *
         detail::ipow(p.gamma(), o.c00);
}

// Product of initiator entries over coordinates, computed from exponent counts.
// Defined for u == v as well; graph edges never use that case.
[[nodiscard]] inline double edge_probability(const KroneckerParams& p, const VertexLabel& u,
                                             const VertexLabel& v) {
  return edge_probability(p, overlap(u, v));
}

// Bit i of the integer is printed at string position n-1-i ("1100" == 12).
[[nodiscard]] inline std::string format_label(const VertexLabel& v) {
  std::string s(static_cast<std::size_t>(v.dimension()), '0');
  for (int i = 0; i < v.dimension(); ++i) {
    if ((v.bits() >> i) & 1U) s[static_cast<std::size_t>(v.dimension() - 1 - i)] = '1';
  }
  return s;
}

// Accepts "0b1100", a bit-string of exactly n characters, or a decimal integer.
[[nodiscard]] inline VertexLabel parse_label(std::string_view text, int n) {
  auto parse_bits = [n](std::string_view s) {
    if (s.empty() || static_cast<int>(s.size()) > n) {
      throw PreconditionError("bit-string label longer than dimension: " + std::string(s));
    }
    std::uint64_t bits = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw PreconditionError("bad label digit in " + std::string(s));
      bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return VertexLabel(bits, n);
  };
  if (text.starts_with("0b")) return parse_bits(text.substr(2));
  const bool binary_only = text.find_first_not_of("01") == std::string_view::npos;
  if (binary_only && static_cast<int>(text.size()) == n) return parse_bits(text);
  std::uint64_t value = 0;
  if (text.empty()) throw PreconditionError("empty label");
  for (char c : text) {
    if (c < '0' || c > '9') throw PreconditionError("bad label: " + std::string(text));
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return VertexLabel(value, n);
}

}  // namespace kron
