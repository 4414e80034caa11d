#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kron/combinatorics.hpp"
#include "kron/model.hpp"

namespace kron::theory {

using real = long double;

inline constexpr double kEqualityTolerance = 1e-12;

// ---------------------------------------------------------------------------
// Connectivity classification

enum class Verdict { kAasConnected, kAasDisconnected, kSubcriticalExtension };

[[nodiscard]] inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kAasConnected: return "AAS_CONNECTED";
    case Verdict::kAasDisconnected: return "AAS_DISCONNECTED";
    case Verdict::kSubcriticalExtension: return "SUBCRITICAL_EXTENSION";
  }
  return "?";
}

struct ConnectivityVerdict {
  Verdict verdict;
  int matched_case;         // 1-4 follow the threshold table; 5 is beta+gamma<1
  std::string condition;    // the condition that fired
};

[[nodiscard]] inline ConnectivityVerdict classify_connectivity(const KroneckerParams& p) {
  const double a = p.alpha();
  const double b = p.beta();
  const double g = p.gamma();
  auto eq = [](double x, double y) { return std::fabs(x - y) <= kEqualityTolerance; };
  const double s = b + g;
  if (eq(s, 1.0) && !eq(b, 1.0)) return {Verdict::kAasDisconnected, 1, "β+γ=1, β≠1"};
  if (eq(b, 1.0) && eq(a, 0.0) && eq(g, 0.0)) return {Verdict::kAasDisconnected, 2, "β=1, α=γ=0"};
  if (eq(b, 1.0) && a > kEqualityTolerance && eq(g, 0.0)) return {Verdict::kAasConnected, 3, "β=1, α>0, γ=0"};
  if (s > 1.0) return {Verdict::kAasConnected, 4, "β+γ>1"};
  return {Verdict::kSubcriticalExtension, 5, "β+γ<1 (outside the threshold table)"};
}

// ---------------------------------------------------------------------------
// Integer rounding of bounds

// Ceil that treats values within 1e-12 of an integer as ties and rounds them up
// by one more, so floating error can only make bounds larger.
[[nodiscard]] inline std::int64_t safe_ceil(real x) {
  const real nearest = std::nearbyint(x);
  if (std::fabs(x - nearest) <= 1e-12L * std::max<real>(1, std::fabs(x))) {
    return static_cast<std::int64_t>(nearest) + 1;
  }
  return static_cast<std::int64_t>(std::ceil(x));
}

// ---------------------------------------------------------------------------
// beta = 1 case

// Largest eta in (0,1) with alpha^eta * sqrt(alpha^2 + 1) = 1 + eta. The left
// minus right side is strictly decreasing on [0,1], positive at 0 and negative
// at 1, so bisection brackets the unique root.
[[nodiscard]] inline real eta_residual(real alpha, real eta) {
  return std::pow(alpha, eta) * std::sqrt(alpha * alpha + 1) - 1 - eta;
}

[[nodiscard]] inline real solve_eta(real alpha) {
  if (!(alpha > 0 && alpha <= 1)) throw PreconditionError("solve_eta requires 0 < alpha <= 1");
  real lo = 0;
  real hi = 1;
  if (!(eta_residual(alpha, lo) > 0 && eta_residual(alpha, hi) < 0)) {
    throw Error("solve_eta: root not bracketed in (0,1)");
  }
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const real mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    if (eta_residual(alpha, mid) > 0) lo = mid;
    else hi = mid;
  }
  return std::fabs(eta_residual(alpha, lo)) <= std::fabs(eta_residual(alpha, hi)) ? lo : hi;
}

// ceil(1/eta) + 2.
[[nodiscard]] inline std::int64_t beta1_path_bound(real alpha) {
  if (alpha <= 0) throw PreconditionError("beta1_path_bound requires alpha > 0 (alpha = 0 is disconnected)");
  return safe_ceil(1 / solve_eta(alpha)) + 2;
}

struct NoCommonNeighbor {
  real exact_product = 0;  // prod_{j=1}^{w-1} (1 - alpha^(2j+t))^C(w,j)
  real sum_form = 0;       // exp(-sum_j C(w,j) alpha^(2j+t))
  real exp_bound = 0;    // exp(-alpha^t ((alpha^2+1)^w - alpha^(2w) - 1))
};

// Probability that v (weight w) and u (weight w+t, distance t) share none of the
// structured candidates x (ones on all of v's zeros, j ones on v's ones) as a
// neighbor, when beta = 1 and gamma = 0; each such x is a common neighbor with
// probability alpha^(2j+t) independently.
[[nodiscard]] inline NoCommonNeighbor beta1_no_common_neighbor(real alpha, int w, int t) {
  if (!(alpha > 0 && alpha <= 1)) throw PreconditionError("beta1_no_common_neighbor requires 0 < alpha <= 1");
  if (t < 1 || t >= w) throw PreconditionError("beta1_no_common_neighbor requires 1 <= t < w");
  NoCommonNeighbor out;
  real log_product = 0;
  real sum = 0;
  bool zero = false;
  for (int j = 1; j <= w - 1; ++j) {
    const real q = std::pow(alpha, 2 * j + t);
    const auto mult = static_cast<real>(comb::choose(w, j));
    if (q >= 1) zero = true;
    else log_product += mult * std::log1p(-q);
    sum += mult * q;
  }
  out.exact_product = zero ? 0 : std::exp(log_product);
  out.sum_form = std::exp(-sum);
  const real a2 = alpha * alpha;
  out.exp_bound = std::exp(-std::pow(alpha, t) * (std::pow(a2 + 1, w) - std::pow(a2, w) - 1));
  return out;
}

// ---------------------------------------------------------------------------
// Degree identities

// E deg(v) for w(v) = w, self term removed.
[[nodiscard]] inline real expected_degree(const KroneckerParams& p, int n, int w) {
  const real a = p.alpha();
  const real b = p.beta();
  const real g = p.gamma();
  auto pw = [](real x, int k) { return k == 0 ? real{1} : std::pow(x, k); };
  return pw(a + b, w) * pw(b + g, n - w) - pw(a, w) * pw(g, n - w);
}

// E #isolated vertices = sum_v prod_{u != v} (1 - p_uv), grouped by weight and
// by (a, b) neighbor class.
[[nodiscard]] inline real expected_isolated(const KroneckerParams& p, int n) {
  real total = 0;
  for (int w = 0; w <= n; ++w) {
    real log_isolated = 0;
    bool impossible = false;
    for (int a = 0; a <= w && !impossible; ++a) {
      for (int b = 0; b <= n - w; ++b) {
        if (a == w && b == 0) continue;
        const real q = edge_probability(p, PairOverlap{a, (w - a) + b, (n - w) - b});
        const auto size = static_cast<real>(comb::choose(w, a)) * static_cast<real>(comb::choose(n - w, b));
        if (q >= 1) {
          impossible = true;
          break;
        }
        log_isolated += size * std::log1p(-q);
      }
    }
    if (!impossible) total += static_cast<real>(comb::choose(n, w)) * std::exp(log_isolated);
  }
  return total;
}

struct MaxTerm {
  int r = 0;  // common ones
  int s = 0;  // common zeros
  real term = 0;
  real reference = 0;  // (alpha+beta)^n / n^2
  [[nodiscard]] bool holds() const { return term >= reference; }
};

// The (r, s) term of the neighbor-class sum nearest the mode, with
// r = round(alpha w/(alpha+beta)), s = round(alpha (n-w)/(alpha+beta)).
[[nodiscard]] inline MaxTerm max_term_bound(int n, int w, real alpha, real beta) {
  if (n < 1 || w < 0 || w > n) throw PreconditionError("max_term_bound requires 0 <= w <= n, n >= 1");
  const real share = alpha / (alpha + beta);
  MaxTerm m;
  m.r = static_cast<int>(std::nearbyint(share * w));
  m.s = static_cast<int>(std::nearbyint(share * (n - w)));
  m.term = static_cast<real>(comb::choose(w, m.r)) * static_cast<real>(comb::choose(n - w, m.s)) *
           std::pow(alpha, m.r + m.s) * std::pow(beta, (w - m.r) + (n - w - m.s));
  m.reference = std::pow(alpha + beta, n) / (static_cast<real>(n) * n);
  return m;
}

// ---------------------------------------------------------------------------
// Weight drift toward the middle layer

[[nodiscard]] inline real drift_factor(real alpha, real beta) {
  if (!(alpha + beta > 0)) throw PreconditionError("drift needs alpha + beta > 0");
  return (alpha - beta) / (alpha + beta);
}

struct DriftTarget {
  real target = 0;         // n/2 + drift (w - n/2)
  int nearest = 0;         // round(target)
  int r = 0;               // common ones of the target class
  int s = 0;               // common zeros of the target class
  int class_weight = 0;    // r + (n - w - s)
  std::uint64_t class_size = 0;
  real class_prob = 0;     // alpha^(r+s) beta^(n-r-s), alpha = gamma
  real expected_count = 0; // class_size * class_prob
};

[[nodiscard]] inline DriftTarget weight_drift_target(int n, int w, real alpha, real beta) {
  const real f = drift_factor(alpha, beta);
  const real share = alpha / (alpha + beta);
  DriftTarget d;
  d.target = static_cast<real>(n) / 2 + f * (w - static_cast<real>(n) / 2);
  d.nearest = static_cast<int>(std::nearbyint(d.target));
  d.r = static_cast<int>(std::nearbyint(share * w));
  d.s = static_cast<int>(std::nearbyint(share * (n - w)));
  d.class_weight = d.r + (n - w - d.s);
  d.class_size = comb::choose(w, d.r) * comb::choose(n - w, d.s);
  auto pw = [](real x, int k) { return k == 0 ? real{1} : std::pow(x, k); };
  d.class_prob = pw(alpha, d.r + d.s) * pw(beta, n - d.r - d.s);
  d.expected_count = static_cast<real>(d.class_size) * d.class_prob;
  return d;
}

// Weights w_0..w_steps with w_b = n/2 + drift^b (w0 - n/2).
[[nodiscard]] inline std::vector<real> drift_trajectory(int n, real w0, real alpha, real beta, int steps) {
  if (steps < 0) throw PreconditionError("drift_trajectory requires steps >= 0");
  const real f = drift_factor(alpha, beta);
  std::vector<real> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  real dev = w0 - static_cast<real>(n) / 2;
  for (int b = 0; b <= steps; ++b) {
    out.push_back(static_cast<real>(n) / 2 + dev);
    dev *= f;
  }
  return out;
}

// Fewest drift steps after which |w - n/2| <= eps n / 2 along the trajectory.
[[nodiscard]] inline int drift_steps_needed(int n, real w0, real alpha, real beta, real eps) {
  const real f = std::fabs(drift_factor(alpha, beta));
  const real dev = std::fabs(w0 - static_cast<real>(n) / 2);
  const real goal = eps * n / 2;
  if (dev <= goal) return 0;
  if (f == 0) return 1;
  return static_cast<int>(safe_ceil(std::log(goal / dev) / std::log(f)));
}

// ---------------------------------------------------------------------------
// Epsilon conditions and the constants chain

// sup of eps in (0,1] with (alpha+beta)^(1-eps) (4 alpha beta)^eps > 1.
[[nodiscard]] inline real epsilon_star(real alpha, real beta) {
  if (!(alpha > 0)) throw PreconditionError("epsilon_star requires alpha > 0");
  if (!(alpha + beta > 1)) throw PreconditionError("epsilon_star requires alpha + beta > 1");
  if (!(beta > 0)) throw PreconditionError("epsilon_star requires beta > 0");
  const real four_ab = 4 * alpha * beta;
  if (four_ab >= 1) return 1;
  return std::min<real>(1, std::log(alpha + beta) / std::log((alpha + beta) / four_ab));
}

[[nodiscard]] inline real epsilon_condition(real alpha, real beta, real eps) {
  return std::pow(alpha + beta, 1 - eps) * std::pow(4 * alpha * beta, eps);
}

// Largest eps keeping min(alpha,beta)^eps (alpha+beta)^(1-eps) > 1.
[[nodiscard]] inline real epsilon_growth(real alpha, real beta) {
  const real m = std::min(alpha, beta);
  if (!(m > 0) || !(alpha + beta > 1)) throw PreconditionError("epsilon_growth requires alpha, beta > 0 and alpha + beta > 1");
  if (m >= 1) return 1;
  return std::log(alpha + beta) / std::log((alpha + beta) / m);
}

[[nodiscard]] inline real growth_base(real alpha, real beta, real eps) {
  return std::pow(std::min(alpha, beta), eps) * std::pow(alpha + beta, 1 - eps);
}

struct TheoryConstants {
  real eta = 0;             // beta = 1 constant for this alpha
  real epsilon = 0;
  real epsilon_growth = 0;
  real epsilon_star = 0;
  real growth = 0;          // g(eps)
  real xi = 0;              // sqrt(g(eps))
  std::int64_t k = 0;                // 2 ceil(log_xi 2)
  std::int64_t path_bound_mid = 0;   // 4 ceil(log_xi 2)
  std::int64_t c = 0;                // 8 ceil(log_xi 2 / eps)
  std::int64_t b = 0;                // ceil(log_|drift| eps), 0 when drift = 0
  std::int64_t c_prime = 0;          // b + 2
  std::int64_t a = 0;                // c + 2 c'
  real drift = 0;

  struct Entry {
    std::string key;
    long double value;
    bool integral;
    std::string rule;
  };

  [[nodiscard]] std::vector<Entry> entries() const {
    return {
        {"eta", eta, false, "largest root of alpha^eta sqrt(alpha^2+1) = 1 + eta"},
        {"epsilon_growth", epsilon_growth, false, "ln(alpha+beta) / ln((alpha+beta)/min(alpha,beta))"},
        {"epsilon_star", epsilon_star, false, "sup eps with (alpha+beta)^(1-eps) (4 alpha beta)^eps > 1"},
        {"epsilon", epsilon, false, "min(epsilon_growth, epsilon_star, 1) / 2"},
        {"g", growth, false, "min(alpha,beta)^eps (alpha+beta)^(1-eps)"},
        {"xi", xi, false, "sqrt(g)"},
        {"drift", drift, false, "(alpha-beta)/(alpha+beta)"},
        {"k", static_cast<long double>(k), true, "2 ceil(log_xi 2)"},
        {"path_bound_mid", static_cast<long double>(path_bound_mid), true, "4 ceil(log_xi 2)"},
        {"c", static_cast<long double>(c), true, "8 ceil(log_xi 2 / eps)"},
        {"b", static_cast<long double>(b), true, "ceil(log_|drift| eps), 0 if drift = 0"},
        {"c_prime", static_cast<long double>(c_prime), true, "b + 2"},
        {"a", static_cast<long double>(a), true, "c + 2 c_prime"},
    };
  }
};

[[nodiscard]] inline TheoryConstants constants_pipeline(const KroneckerParams& p) {
  if (std::fabs(p.alpha() - p.gamma()) > kEqualityTolerance) {
    throw PreconditionError("constants_pipeline requires alpha = gamma");
  }
  if (!(p.beta() + p.gamma() > 1)) throw PreconditionError("constants_pipeline requires beta + gamma > 1");
  const real alpha = p.alpha();
  const real beta = p.beta();

  TheoryConstants t;
  t.eta = solve_eta(alpha);
  t.epsilon_growth = epsilon_growth(alpha, beta);
  t.epsilon_star = epsilon_star(alpha, beta);
  t.epsilon = std::min({t.epsilon_growth, t.epsilon_star, real{1}}) / 2;
  t.growth = growth_base(alpha, beta, t.epsilon);
  t.xi = std::sqrt(t.growth);
  const real log_xi_2 = std::log(real{2}) / std::log(t.xi);
  const std::int64_t half_k = safe_ceil(log_xi_2);
  t.k = 2 * half_k;
  t.path_bound_mid = 4 * half_k;
  t.c = 8 * safe_ceil(log_xi_2 / t.epsilon);
  t.drift = drift_factor(alpha, beta);
  t.b = t.drift == 0 ? 0 : safe_ceil(std::log(t.epsilon) / std::log(std::fabs(t.drift)));
  t.c_prime = t.b + 2;
  t.a = t.c + 2 * t.c_prime;
  return t;
}

// Constant diameter bound for a connected regime.
[[nodiscard]] inline std::int64_t diameter_upper_bound(const KroneckerParams& p) {
  const auto v = classify_connectivity(p);
  if (v.verdict != Verdict::kAasConnected) {
    throw PreconditionError(std::string("diameter_upper_bound: regime is ") + to_string(v.verdict) + " (" + v.condition + ")");
  }
  if (v.matched_case == 3) return beta1_path_bound(p.alpha());
  // lowering alpha to gamma can only increase the diameter
  return constants_pipeline(KroneckerParams(p.gamma(), p.beta(), p.gamma())).a;
}

}  // namespace kron::theory
