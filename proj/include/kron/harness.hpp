#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kron/combinatorics.hpp"
#include "kron/graph.hpp"
#include "kron/harness_io.hpp"
#include "kron/layers.hpp"
#include "kron/model.hpp"
#include "kron/random.hpp"
#include "kron/sampler.hpp"
#include "kron/stats.hpp"
#include "kron/theory.hpp"

namespace kron::harness {

// Statistical bands. Means are compared in units of the standard error implied
// by the reference law, not the sample, so degenerate samples (all zeros) still
// get a finite band.
inline constexpr double kMeanBandSe = 3.0;
inline constexpr double kFrequencyBandSe = 4.0;
inline constexpr double kChiSquareFloor = 0.001;

namespace detail {

inline std::uint64_t trial_stream(int n, std::uint64_t trial) {
  return rng::hash_words(static_cast<std::uint64_t>(n), trial);
}

inline ResultRecord base_record(const ExperimentConfig& c, int n, std::uint64_t trial) {
  ResultRecord r;
  r.experiment = c.experiment;
  r.label = c.stem();
  r.n = n;
  r.trial = trial;
  r.seed = c.seed;
  r.stream = trial_stream(n, trial);
  r.backend = to_string(c.backend);
  r.alpha = c.alpha;
  r.beta = c.beta;
  r.gamma = c.gamma;
  return r;
}

inline GraphStore sample_with_backend(const ExperimentConfig& c, int n, SampleSeed seed) {
  if (c.backend == Backend::kLazy) return LazyKronecker(c.params(), n, seed).materialize();
  return sample_graph(c.params(), n, seed);
}

inline std::uint64_t random_label_of_weight(rng::CounterRng& g, int n, int w) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  return comb::unrank_subset(g.below(comb::choose(n, w)), w, all);
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : (xs[m - 1] + xs[m]) / 2.0;
}

// Records grouped by (n, group key) in first-appearance order.
template <typename KeyFn>
std::vector<std::pair<std::pair<int, std::string>, std::vector<const ResultRecord*>>> group_records(
    const std::vector<ResultRecord>& records, KeyFn&& key) {
  std::vector<std::pair<std::pair<int, std::string>, std::vector<const ResultRecord*>>> out;
  for (const auto& r : records) {
    std::pair<int, std::string> k{r.n, key(r)};
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == k; });
    if (it == out.end()) {
      out.push_back({k, {}});
      it = out.end() - 1;
    }
    it->second.push_back(&r);
  }
  return out;
}

inline SummaryRow row(const ResultRecord& first, const std::string& group, std::uint64_t trials, std::uint64_t used,
                      std::string statistic, double value, std::optional<double> reference = std::nullopt,
                      std::optional<bool> passed = std::nullopt) {
  SummaryRow s;
  s.experiment = first.experiment;
  s.label = first.label;
  s.n = first.n;
  s.group = group;
  s.trials = trials;
  s.used = used;
  s.skipped = trials - used;
  s.statistic = std::move(statistic);
  s.value = value;
  s.reference = reference;
  s.passed = passed;
  return s;
}

inline double midlayer_epsilon(const ExperimentConfig& c) {
  if (c.epsilon) return *c.epsilon;
  return static_cast<double>(theory::constants_pipeline(c.params()).epsilon);
}

inline double drift_epsilon(const ExperimentConfig& c) {
  if (c.epsilon) return *c.epsilon;
  try {
    return static_cast<double>(theory::constants_pipeline(c.params()).epsilon);
  } catch (const PreconditionError&) {
    return 0.25;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Connectivity sweep

inline std::vector<ResultRecord> connectivity_records(const ExperimentConfig& c) {
  const auto params = c.params();
  const auto verdict = theory::classify_connectivity(params);
  std::vector<ResultRecord> out;
  for (int n : c.n_values) {
    const double expected_isolated = static_cast<double>(theory::expected_isolated(params, n));
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      auto r = detail::base_record(c, n, trial);
      const GraphStore g = detail::sample_with_backend(c, n, {c.seed, r.stream});
      const Components comps = connected_components(g);
      std::uint64_t isolated = 0;
      std::size_t dmax = 0;
      for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        isolated += g.degree(v) == 0 ? 1 : 0;
        dmax = std::max(dmax, g.degree(v));
      }
      r.verdict = theory::to_string(verdict.verdict);
      r.connected = comps.count() == 1;
      r.components = comps.count();
      r.edge_count = g.edge_count();
      r.degree_mean = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
      r.degree_max = dmax;
      r.isolated = isolated;
      r.expected_value = expected_isolated;
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<SummaryRow> connectivity_summary(const std::vector<ResultRecord>& records) {
  std::vector<SummaryRow> out;
  for (const auto& [key, rs] : detail::group_records(records, [](const ResultRecord&) { return std::string{}; })) {
    const auto& first = *rs.front();
    std::uint64_t connected = 0;
    std::vector<std::uint64_t> isolated;
    for (const auto* r : rs) {
      connected += r->connected.value_or(false) ? 1 : 0;
      isolated.push_back(r->isolated.value_or(0));
    }
    const auto total = static_cast<std::uint64_t>(rs.size());
    out.push_back(detail::row(first, "", total, total, "fraction_connected",
                              static_cast<double>(connected) / static_cast<double>(total)));
    out.push_back(detail::row(first, "", total, total, "isolated_mean", stats::summarize(isolated).mean,
                              first.expected_value));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diameter experiment

inline std::vector<ResultRecord> diameter_records(const ExperimentConfig& c) {
  const auto params = c.params();
  const auto bound = static_cast<double>(theory::diameter_upper_bound(params));
  std::vector<ResultRecord> out;
  for (int n : c.n_values) {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      auto r = detail::base_record(c, n, trial);
      const GraphStore g = detail::sample_with_backend(c, n, {c.seed, r.stream});
      r.edge_count = g.edge_count();
      r.predicted_bound = bound;
      if (c.desk_ceiling) r.desk_ceiling = static_cast<double>(*c.desk_ceiling);
      const Components comps = connected_components(g);
      r.components = comps.count();
      r.connected = comps.count() == 1;
      if (!*r.connected) {
        r.skipped = true;
        r.skip_reason = "disconnected";
      } else {
        const auto d = diameter_exact(g);
        r.diameter = d.diameter;
        r.diameter_method = d.method == DiameterMethod::kIFub ? "ifub" : "all_pairs";
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<SummaryRow> diameter_summary(const std::vector<ResultRecord>& records) {
  std::vector<SummaryRow> out;
  for (const auto& [key, rs] : detail::group_records(records, [](const ResultRecord&) { return std::string{}; })) {
    const auto& first = *rs.front();
    std::vector<double> diameters;
    for (const auto* r : rs)
      if (!r->skipped && r->diameter) diameters.push_back(static_cast<double>(*r->diameter));
    const auto total = static_cast<std::uint64_t>(rs.size());
    const auto used = static_cast<std::uint64_t>(diameters.size());
    const double dmax = diameters.empty() ? 0.0 : *std::max_element(diameters.begin(), diameters.end());
    out.push_back(detail::row(first, "", total, used, "connected_samples", static_cast<double>(used)));
    out.push_back(detail::row(first, "", total, used, "diameter_max", dmax, first.predicted_bound,
                              first.predicted_bound ? std::optional<bool>(dmax <= *first.predicted_bound) : std::nullopt));
    if (first.desk_ceiling) {
      out.push_back(detail::row(first, "", total, used, "diameter_max_vs_ceiling", dmax, first.desk_ceiling,
                                dmax <= *first.desk_ceiling));
    }
    out.push_back(detail::row(first, "", total, used, "diameter_median", detail::median(diameters)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Middle-layer expansion (thinned layer first-neighborhood law and growth)

inline std::vector<ResultRecord> midlayer_records(const ExperimentConfig& c) {
  const auto params = c.params();
  if (std::fabs(c.alpha - c.gamma) > theory::kEqualityTolerance) {
    throw PreconditionError("midlayer experiment requires alpha = gamma");
  }
  const auto constants = theory::constants_pipeline(params);
  const double eps = detail::midlayer_epsilon(c);
  const double xi = static_cast<double>(constants.xi);
  const int kmax = static_cast<int>(constants.k);
  std::vector<ResultRecord> out;
  for (int n : c.n_values) {
    if (n % 2 != 0) throw PreconditionError("midlayer experiment requires even n");
    const std::size_t parts = c.part_count == 0 ? static_cast<std::size_t>(n) * n : c.part_count;
    const auto layer_labels = comb::labels_of_weight(n, n / 2);
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      auto r = detail::base_record(c, n, trial);
      const SampleSeed seed{c.seed, r.stream};
      rng::CounterRng pick(seed, 0x5049434bULL);
      const std::uint64_t u = layer_labels[pick.below(layer_labels.size())];
      std::vector<std::uint64_t> close;
      for (std::uint64_t x : layer_labels)
        if (static_cast<double>(std::popcount(x ^ u)) < eps * n) close.push_back(x);
      r.source = u;
      if (close.empty()) {
        r.skipped = true;
        r.skip_reason = "no admissible partner";
        out.push_back(std::move(r));
        continue;
      }
      const std::uint64_t v = close[pick.below(close.size())];
      r.partner = v;

      const GraphStore g = detail::sample_with_backend(c, n, seed);
      const LayerSubgraph middle = middle_layer(g);
      const LayerSubgraph part = edge_split_part(middle, parts, 0, {seed.seed, rng::hash_words(seed.stream, 1)});
      const auto thinned = thinned_layer(params, part, VertexLabel(u, n), VertexLabel(v, n), parts,
                                         {seed.seed, rng::hash_words(seed.stream, 2)});
      const int i_size = std::popcount(thinned.coordinates);
      const auto law = first_layer_law(params, n, i_size, parts);
      const auto profile = growth_profile(thinned.graph, u, xi, kmax, n);

      r.i_size = i_size;
      r.layer_sizes = profile.sizes;
      r.first_layer = profile.sizes.size() > 1 ? profile.sizes[1] : 0;
      if (profile.J) r.growth_j = *profile.J;
      r.law_trials = law.trials;
      r.law_rho = law.rho;
      r.expected_value = law.mean();
      r.predicted_bound = static_cast<double>(constants.path_bound_mid);
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<SummaryRow> midlayer_summary(const std::vector<ResultRecord>& records) {
  std::vector<SummaryRow> out;
  auto key = [](const ResultRecord& r) { return r.i_size ? "I=" + std::to_string(*r.i_size) : std::string("skipped"); };
  for (const auto& [k, rs] : detail::group_records(records, key)) {
    const auto& first = *rs.front();
    const auto total = static_cast<std::uint64_t>(rs.size());
    if (first.skipped) {
      out.push_back(detail::row(first, k.second, total, 0, "skipped_trials", static_cast<double>(total)));
      continue;
    }
    std::vector<std::uint64_t> sizes;
    std::vector<double> js;
    for (const auto* r : rs) {
      sizes.push_back(r->first_layer.value_or(0));
      if (r->growth_j) js.push_back(*r->growth_j);
    }
    const std::uint64_t M = first.law_trials.value_or(0);
    const double rho = first.law_rho.value_or(0.0);
    const double mean = stats::summarize(sizes).mean;
    const double expected = static_cast<double>(M) * rho;
    const double se = std::sqrt(static_cast<double>(M) * rho * (1.0 - rho) / static_cast<double>(sizes.size()));
    const double z = stats::z_score(mean, expected, se);
    const auto fit = stats::chi_square_binomial_fit(sizes, M, rho);
    out.push_back(detail::row(first, k.second, total, total, "first_layer_mean", mean, expected, z <= kMeanBandSe));
    out.push_back(detail::row(first, k.second, total, total, "first_layer_z", z, kMeanBandSe));
    out.push_back(detail::row(first, k.second, total, total, "first_layer_chi2_p", fit.p_value, kChiSquareFloor,
                              fit.p_value > kChiSquareFloor));
    out.push_back(detail::row(first, k.second, total, static_cast<std::uint64_t>(js.size()), "growth_j_mean",
                              stats::summarize(js).mean));
  }
  return out;
}

// ---------------------------------------------------------------------------
// beta = 1: common neighbors among structured candidates

inline std::vector<ResultRecord> beta1_records(const ExperimentConfig& c) {
  const auto params = c.params();
  if (std::fabs(c.beta - 1.0) > theory::kEqualityTolerance || c.gamma != 0.0 || !(c.alpha > 0.0)) {
    throw PreconditionError("beta1 experiment requires beta = 1, gamma = 0, alpha > 0");
  }
  const int w = c.w;
  const int t = c.t;
  const auto reference = theory::beta1_no_common_neighbor(c.alpha, w, t);
  const double eta = static_cast<double>(theory::solve_eta(c.alpha));
  std::vector<ResultRecord> out;
  for (int n : c.n_values) {
    if (w + t > n || 2 * w < n) throw PreconditionError("beta1 experiment requires n/2 <= w and w + t <= n");
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      auto r = detail::base_record(c, n, trial);
      const SampleSeed seed{c.seed, r.stream};
      rng::CounterRng pick(seed, 0x42455441ULL);
      const std::uint64_t v = detail::random_label_of_weight(pick, n, w);
      const auto zeros = comb::bit_positions(~v & VertexLabel::mask(n));
      const auto ones = comb::bit_positions(v);
      const std::uint64_t u = v | comb::unrank_subset(pick.below(comb::choose(n - w, t)), t, zeros);
      const std::uint64_t zero_mask = ~v & VertexLabel::mask(n);

      // candidates: ones on all of v's zeros plus j in [1, w-1] of v's ones
      const LazyKronecker lazy(params, n, seed);
      bool common = false;
      for (int j = 1; j <= w - 1 && !common; ++j) {
        const std::uint64_t ways = comb::choose(w, j);
        for (std::uint64_t rank = 0; rank < ways && !common; ++rank) {
          const std::uint64_t x = zero_mask | comb::unrank_subset(rank, j, ones);
          common = lazy.has_edge(v, x) && lazy.has_edge(u, x);
        }
      }
      r.source = v;
      r.partner = u;
      r.start_weight = w;
      r.i_size = t;
      r.no_common_neighbor = !common;
      r.within_eta_range = static_cast<double>(t) < eta * n;
      r.expected_value = static_cast<double>(reference.exact_product);
      r.exp_bound = static_cast<double>(reference.exp_bound);
      r.predicted_bound = static_cast<double>(theory::beta1_path_bound(c.alpha));
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<SummaryRow> beta1_summary(const std::vector<ResultRecord>& records) {
  std::vector<SummaryRow> out;
  for (const auto& [k, rs] : detail::group_records(records, [](const ResultRecord&) { return std::string{}; })) {
    const auto& first = *rs.front();
    const auto total = static_cast<std::uint64_t>(rs.size());
    std::uint64_t none = 0;
    std::uint64_t violations = 0;
    for (const auto* r : rs) {
      none += r->no_common_neighbor.value_or(false) ? 1 : 0;
      if (r->expected_value.value_or(0) > r->exp_bound.value_or(0) + 1e-12) ++violations;
    }
    const double freq = static_cast<double>(none) / static_cast<double>(total);
    const double p = first.expected_value.value_or(0.0);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    const double z = stats::z_score(freq, p, se);
    out.push_back(detail::row(first, "", total, total, "no_common_frequency", freq, p, z <= kFrequencyBandSe));
    out.push_back(detail::row(first, "", total, total, "no_common_z", z, kFrequencyBandSe));
    out.push_back(detail::row(first, "", total, total, "exact_above_bound_rows", static_cast<double>(violations), 0.0,
                              violations == 0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weight drift toward the middle layer

namespace detail {

// Expected number of neighbors of weight target for a vertex of weight w.
inline double expected_at_weight(const KroneckerParams& p, int n, int w, int target) {
  double total = 0.0;
  for (int a = 0; a <= w; ++a) {
    const int b = target - a;
    if (b < 0 || b > n - w || (a == w && b == 0)) continue;
    total += comb::choose_real(w, a) * comb::choose_real(n - w, b) *
             edge_probability(p, PairOverlap{a, (w - a) + b, (n - w) - b});
  }
  return total;
}

inline double variance_at_weight(const KroneckerParams& p, int n, int w, int target) {
  double total = 0.0;
  for (int a = 0; a <= w; ++a) {
    const int b = target - a;
    if (b < 0 || b > n - w || (a == w && b == 0)) continue;
    const double q = edge_probability(p, PairOverlap{a, (w - a) + b, (n - w) - b});
    total += comb::choose_real(w, a) * comb::choose_real(n - w, b) * q * (1.0 - q);
  }
  return total;
}

}  // namespace detail

inline std::vector<ResultRecord> drift_records(const ExperimentConfig& c) {
  const auto params = c.params();
  if (std::fabs(c.alpha - c.gamma) > theory::kEqualityTolerance) {
    throw PreconditionError("drift experiment requires alpha = gamma");
  }
  const double eps = detail::drift_epsilon(c);
  const bool supercritical = c.beta + c.gamma > 1.0;
  std::vector<ResultRecord> out;
  for (int n : c.n_values) {
    std::vector<int> weights = c.weights.empty() ? std::vector<int>{n} : c.weights;
    for (int w0 : weights) {
      if (w0 < 0 || w0 > n) throw PreconditionError("drift start weight outside [0,n]");
      const auto target = theory::weight_drift_target(n, w0, c.alpha, c.beta);
      const int half = n / 2;
      const double expected_target_weight = detail::expected_at_weight(params, n, w0, target.nearest);
      const double expected_middle = n % 2 == 0 ? detail::expected_at_weight(params, n, w0, half) : 0.0;
      const int predicted = theory::drift_steps_needed(n, w0, c.alpha, c.beta, eps);
      const int cap = 4 * (predicted + 2);
      for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
        auto r = detail::base_record(c, n, trial);
        r.stream = rng::hash_words(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(w0), trial);
        const SampleSeed seed{c.seed, r.stream};
        rng::CounterRng pick(seed, 0x44524946ULL);
        const std::uint64_t v = detail::random_label_of_weight(pick, n, w0);
        const VertexLabel vl(v, n);
        auto query = [&](const VertexLabel& x, std::uint64_t step) {
          const SampleSeed s{c.seed, rng::hash_words(r.stream, step)};
          return c.backend == Backend::kLazy ? lazy_neighborhood(params, x, {c.seed, r.stream})
                                             : sample_neighbors(params, x, s);
        };
        const auto nb = query(vl, 0);
        std::uint64_t in_class = 0;
        std::uint64_t at_target = 0;
        std::uint64_t at_middle = 0;
        for (std::uint64_t x : nb) {
          const int common_ones = std::popcount(x & v);
          const int common_zeros = std::popcount(~(x | v) & VertexLabel::mask(n));
          if (common_ones == target.r && common_zeros == target.s) ++in_class;
          const int wx = std::popcount(x);
          if (wx == target.nearest) ++at_target;
          if (n % 2 == 0 && wx == half) ++at_middle;
        }

        // Greedy walk: move to the neighbor whose weight is nearest the drift
        // target of the current vertex until |w - n/2| <= eps n / 2.
        std::optional<int> steps;
        VertexLabel cur = vl;
        for (int step = 0; step <= cap; ++step) {
          const int wc = weight(cur);
          if (std::fabs(wc - n / 2.0) <= eps * n / 2.0) {
            steps = step;
            break;
          }
          if (step == cap) break;
          const auto cand = step == 0 ? nb : query(cur, static_cast<std::uint64_t>(step));
          if (cand.empty()) break;
          const int goal = theory::weight_drift_target(n, wc, c.alpha, c.beta).nearest;
          auto better = [&](std::uint64_t a, std::uint64_t b) {
            const int da = std::abs(std::popcount(a) - goal);
            const int db = std::abs(std::popcount(b) - goal);
            if (da != db) return da < db;
            const double ma = std::fabs(std::popcount(a) - n / 2.0);
            const double mb = std::fabs(std::popcount(b) - n / 2.0);
            if (ma != mb) return ma < mb;
            return a < b;
          };
          cur = VertexLabel(*std::min_element(cand.begin(), cand.end(), better), n);
        }

        r.source = v;
        r.start_weight = w0;
        r.target_weight = target.nearest;
        r.count_target_class = in_class;
        r.count_target_weight = at_target;
        if (n % 2 == 0) r.count_middle = at_middle;
        r.expected_value = static_cast<double>(target.expected_count);
        r.expected_target_weight = expected_target_weight;
        if (n % 2 == 0) r.expected_middle = expected_middle;
        r.steps = steps;
        if (!steps) {
          r.skip_reason = "walk stalled";
        }
        r.predicted_steps = predicted;
        r.supercritical = supercritical;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

inline std::vector<SummaryRow> drift_summary(const std::vector<ResultRecord>& records) {
  std::vector<SummaryRow> out;
  auto key = [](const ResultRecord& r) { return "w=" + std::to_string(r.start_weight.value_or(-1)); };
  for (const auto& [k, rs] : detail::group_records(records, key)) {
    const auto& first = *rs.front();
    const auto total = static_cast<std::uint64_t>(rs.size());
    const int n = first.n;
    const int w0 = first.start_weight.value_or(0);
    const KroneckerParams params(first.alpha, first.beta, first.gamma);
    const auto target = theory::weight_drift_target(n, w0, first.alpha, first.beta);

    std::vector<std::uint64_t> in_class;
    std::vector<std::uint64_t> at_target;
    std::uint64_t within = 0;
    std::uint64_t reached = 0;
    for (const auto* r : rs) {
      in_class.push_back(r->count_target_class.value_or(0));
      at_target.push_back(r->count_target_weight.value_or(0));
      if (r->steps) {
        ++reached;
        if (*r->steps <= r->predicted_steps.value_or(0)) ++within;
      }
    }
    const double count = static_cast<double>(total);
    const double class_mean = stats::summarize(in_class).mean;
    const double p = static_cast<double>(target.class_prob);
    const double class_se = std::sqrt(static_cast<double>(target.class_size) * p * (1.0 - p) / count);
    const double z_class = stats::z_score(class_mean, first.expected_value.value_or(0.0), class_se);
    out.push_back(detail::row(first, k.second, total, total, "target_class_mean", class_mean, first.expected_value,
                              z_class <= kMeanBandSe));
    out.push_back(detail::row(first, k.second, total, total, "target_class_z", z_class, kMeanBandSe));

    const double weight_mean = stats::summarize(at_target).mean;
    const double weight_se = std::sqrt(detail::variance_at_weight(params, n, w0, target.nearest) / count);
    const double z_weight = stats::z_score(weight_mean, first.expected_target_weight.value_or(0.0), weight_se);
    out.push_back(detail::row(first, k.second, total, total, "target_weight_mean", weight_mean,
                              first.expected_target_weight, z_weight <= kMeanBandSe));
    out.push_back(detail::row(first, k.second, total, reached, "walk_reached_fraction",
                              static_cast<double>(reached) / count));
    out.push_back(detail::row(first, k.second, total, total, "walk_within_prediction_fraction",
                              static_cast<double>(within) / count, first.predicted_steps ? std::optional<double>(*first.predicted_steps) : std::nullopt));
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<SummaryRow> summarize_records(const std::string& experiment, const std::vector<ResultRecord>& records) {
  if (experiment == "connectivity") return connectivity_summary(records);
  if (experiment == "diameter") return diameter_summary(records);
  if (experiment == "midlayer") return midlayer_summary(records);
  if (experiment == "beta1") return beta1_summary(records);
  if (experiment == "drift") return drift_summary(records);
  throw PreconditionError("unknown experiment '" + experiment + "'");
}

inline ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  const auto& e = config.experiment;
  if (e == "connectivity") result.records = connectivity_records(config);
  else if (e == "diameter") result.records = diameter_records(config);
  else if (e == "midlayer") result.records = midlayer_records(config);
  else if (e == "beta1") result.records = beta1_records(config);
  else result.records = drift_records(config);
  result.summary = summarize_records(e, result.records);
  return result;
}

inline ExperimentResult run_connectivity_sweep(ExperimentConfig c) {
  c.experiment = "connectivity";
  return run_experiment(c);
}
inline ExperimentResult run_diameter_experiment(ExperimentConfig c) {
  c.experiment = "diameter";
  return run_experiment(c);
}
inline ExperimentResult run_midlayer_expansion(ExperimentConfig c) {
  c.experiment = "midlayer";
  return run_experiment(c);
}
inline ExperimentResult run_beta1_common_neighbor(ExperimentConfig c) {
  c.experiment = "beta1";
  return run_experiment(c);
}
inline ExperimentResult run_weight_drift(ExperimentConfig c) {
  c.experiment = "drift";
  return run_experiment(c);
}

}  // namespace kron::harness
