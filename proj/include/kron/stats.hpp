#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace kron::stats {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  [[nodiscard]] double standard_error() const {
    return count > 1 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
  }
};

template <typename T>
[[nodiscard]] Summary summarize(std::span<const T> xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (const auto& x : xs) sum += static_cast<double>(x);
  s.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (const auto& x : xs) {
    const double d = static_cast<double>(x) - s.mean;
    ss += d * d;
  }
  s.variance = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
  return s;
}

template <typename T>
[[nodiscard]] Summary summarize(const std::vector<T>& xs) {
  return summarize(std::span<const T>(xs));
}

// |observed - expected| in units of the standard error of the observed mean.
[[nodiscard]] inline double z_score(double observed_mean, double expected_mean, double standard_error) {
  if (standard_error == 0.0) return observed_mean == expected_mean ? 0.0 : INFINITY;
  return std::fabs(observed_mean - expected_mean) / standard_error;
}

// Upper tail of the chi-square distribution.
[[nodiscard]] inline double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;
};

// Goodness of fit of integer observations to a discrete law given by its pmf on
// 0..support_max. Bins are merged left to right until each expects >= 5; the
// last bin absorbs the upper tail, including observations above support_max.
template <typename Pmf>
[[nodiscard]] ChiSquare chi_square_fit(std::span<const std::uint64_t> observations, std::uint64_t support_max, Pmf&& pmf) {
  ChiSquare out;
  const auto total = static_cast<double>(observations.size());
  if (observations.empty()) return out;
  std::map<std::uint64_t, double> counts;
  for (auto x : observations) counts[std::min(x, support_max)] += 1.0;

  const std::uint64_t max_obs = std::min(support_max, counts.rbegin()->first);
  std::vector<double> expected;
  std::vector<double> observed;
  double acc_e = 0.0;
  double acc_o = 0.0;
  double cumulative = 0.0;
  for (std::uint64_t k = 0; k <= support_max; ++k) {
    const double pk = pmf(k);
    cumulative += pk;
    acc_e += pk * total;
    if (auto it = counts.find(k); it != counts.end()) acc_o += it->second;
    const double tail = std::max(0.0, 1.0 - cumulative) * total;
    if (k == support_max || (tail < 5.0 && k >= max_obs)) {
      acc_e += tail;
      for (auto it = counts.upper_bound(k); it != counts.end(); ++it) acc_o += it->second;
      expected.push_back(acc_e);
      observed.push_back(acc_o);
      break;
    }
    if (acc_e >= 5.0) {
      expected.push_back(acc_e);
      observed.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (expected.size() > 1 && expected.back() < 5.0) {
    expected[expected.size() - 2] += expected.back();
    observed[observed.size() - 2] += observed.back();
    expected.pop_back();
    observed.pop_back();
  }
  out.bins = static_cast<int>(expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] > 0) out.statistic += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  out.dof = out.bins - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

[[nodiscard]] inline ChiSquare chi_square_binomial_fit(std::span<const std::uint64_t> observations, std::uint64_t trials,
                                                       double p) {
  if (p <= 0.0 || trials == 0) {
    ChiSquare out;
    const bool all_zero = std::all_of(observations.begin(), observations.end(), [](auto x) { return x == 0; });
    out.p_value = all_zero ? 1.0 : 0.0;
    return out;
  }
  boost::math::binomial_distribution<double> law(static_cast<double>(trials), p);
  return chi_square_fit(observations, trials, [&](std::uint64_t k) { return boost::math::pdf(law, static_cast<double>(k)); });
}

// Homogeneity test of two samples of integer observations (2 x K table).
// Columns are merged until each pooled expected count is >= 5.
[[nodiscard]] inline ChiSquare chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  ChiSquare out;
  std::map<std::uint64_t, std::pair<double, double>> table;
  for (auto x : a) table[x].first += 1.0;
  for (auto x : b) table[x].second += 1.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  if (na == 0 || nb == 0) return out;

  std::vector<std::pair<double, double>> cols;
  std::pair<double, double> acc{0.0, 0.0};
  for (const auto& [k, c] : table) {
    acc.first += c.first;
    acc.second += c.second;
    const double col = acc.first + acc.second;
    if (col * std::min(na, nb) / n >= 5.0) {
      cols.push_back(acc);
      acc = {0.0, 0.0};
    }
  }
  if (acc.first + acc.second > 0) {
    if (cols.empty()) cols.push_back(acc);
    else {
      cols.back().first += acc.first;
      cols.back().second += acc.second;
    }
  }
  out.bins = static_cast<int>(cols.size());
  for (const auto& [oa, ob] : cols) {
    const double col = oa + ob;
    const double ea = col * na / n;
    const double eb = col * nb / n;
    out.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  out.dof = out.bins - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

}  // namespace kron::stats
