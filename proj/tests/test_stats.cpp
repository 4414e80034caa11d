#include "catch_amalgamated.hpp"

#include "kron/random.hpp"
#include "kron/stats.hpp"

using namespace kron;
using Catch::Approx;

TEST_CASE("summary") {
  const std::vector<int> xs{1, 2, 3, 4};
  const auto s = stats::summarize(xs);
  CHECK(s.mean == 2.5);
  CHECK(s.variance == Approx(5.0 / 3.0));
  CHECK(stats::summarize(std::vector<int>{}).count == 0);
  CHECK(stats::z_score(1, 1, 0) == 0);
  CHECK(std::isinf(stats::z_score(1, 2, 0)));
  CHECK(stats::z_score(3, 1, 0.5) == 4);
}

TEST_CASE("chi-square survival function") {
  CHECK(stats::chi_square_sf(3.841458820694124, 1) == Approx(0.05).epsilon(1e-9));
  CHECK(stats::chi_square_sf(0, 3) == 1);
}

TEST_CASE("binomial fit accepts binomial data and rejects shifted data") {
  rng::CounterRng g(4);
  std::vector<std::uint64_t> good, bad;
  for (int i = 0; i < 5000; ++i) {
    good.push_back(static_cast<std::uint64_t>(rng::binomial(g, 20, 0.3)));
    bad.push_back(static_cast<std::uint64_t>(rng::binomial(g, 20, 0.36)));
  }
  CHECK(stats::chi_square_binomial_fit(good, 20, 0.3).p_value > 0.001);
  CHECK(stats::chi_square_binomial_fit(bad, 20, 0.3).p_value < 1e-6);
}

TEST_CASE("binomial fit with a tiny mean keeps at least one degree of freedom or reports no evidence") {
  std::vector<std::uint64_t> zeros(100, 0);
  const auto fit = stats::chi_square_binomial_fit(zeros, 100, 1e-4);
  CHECK(fit.p_value > 0.001);
  std::vector<std::uint64_t> ones(1000, 1);
  CHECK(stats::chi_square_binomial_fit(ones, 100, 1e-4).p_value < 1e-6);
  CHECK(stats::chi_square_binomial_fit(zeros, 100, 0.0).p_value == 1);
}

TEST_CASE("two-sample homogeneity") {
  rng::CounterRng g(9);
  std::vector<std::uint64_t> a, b, c;
  for (int i = 0; i < 3000; ++i) {
    a.push_back(static_cast<std::uint64_t>(rng::binomial(g, 30, 0.4)));
    b.push_back(static_cast<std::uint64_t>(rng::binomial(g, 30, 0.4)));
    c.push_back(static_cast<std::uint64_t>(rng::binomial(g, 30, 0.45)));
  }
  CHECK(stats::chi_square_two_sample(a, b).p_value > 0.001);
  CHECK(stats::chi_square_two_sample(a, c).p_value < 1e-6);
}
