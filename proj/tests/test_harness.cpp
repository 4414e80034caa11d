#include "catch_amalgamated.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kron/harness.hpp"

using namespace kron;
using namespace kron::harness;

namespace {

ExperimentConfig make(const std::string& kind, double a, double b, double g, std::vector<int> n, std::size_t trials) {
  ExperimentConfig c;
  c.experiment = kind;
  c.alpha = a;
  c.beta = b;
  c.gamma = g;
  c.n_values = std::move(n);
  c.trials = trials;
  c.seed = 2024;
  return c;
}

const SummaryRow* find_row(const std::vector<SummaryRow>& rows, int n, const std::string& stat) {
  for (const auto& r : rows)
    if (r.n == n && r.statistic == stat) return &r;
  return nullptr;
}

std::vector<ResultRecord> reparse(const std::vector<ResultRecord>& records) {
  std::istringstream in(records_jsonl(records));
  return read_records_jsonl(in);
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(R"(
[sweep]
experiment = connectivity
alpha = 0.6
beta = 0.7
gamma = 0.6
n = 6, 8
trials = 10
seed = 42

[drift14]
experiment = drift
alpha = 0.2
beta = 0.8
gamma = 0.2
n = 14
weights = 14, 12
seed = 1
backend = lazy
output = out
epsilon = 0.3
)");
  const auto cs = parse_config(in);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].label == "sweep");
  CHECK(cs[0].n_values == std::vector<int>{6, 8});
  CHECK(cs[0].trials == 10);
  CHECK(cs[0].backend == Backend::kGrouped);
  CHECK(cs[1].weights == std::vector<int>{14, 12});
  CHECK(cs[1].backend == Backend::kLazy);
  CHECK(cs[1].output_dir == "out");
  CHECK(cs[1].epsilon == std::optional<double>(0.3));
}

TEST_CASE("config errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  CHECK_THROWS_AS(parse("[a]\nexperiment=connectivity\nalpha=0.6\nbeta=0.7\ngamma=0.6\nn=6\nseed=1\ncolour=red\n"),
                  PreconditionError);
  CHECK_THROWS_AS(parse("[a]\nexperiment=connectivity\nalpha=0.6\nbeta=0.7\ngamma=0.6\nn=6\n"), PreconditionError);
  CHECK_THROWS_AS(parse("alpha=0.6\n"), PreconditionError);
  CHECK_THROWS_AS(parse("[a]\nexperiment=nope\nalpha=0.6\nbeta=0.7\ngamma=0.6\nn=6\nseed=1\n"), PreconditionError);
  CHECK_THROWS_AS(parse("[a]\nexperiment=connectivity\nalpha=0.6\nbeta=0.7\ngamma=0.7\nn=6\nseed=1\n"),
                  PreconditionError);
  CHECK_THROWS_AS(parse("[a]\nexperiment=connectivity\nalpha=0.6\nbeta=0.7\ngamma=0.6\nn=16\nseed=1\nbackend=lazy\n"),
                  PreconditionError);
  CHECK_THROWS_AS(parse("[a]\nexperiment=connectivity\nalpha=0.6\nbeta=0.7\ngamma=0.6\nn=6,x\nseed=1\n"),
                  PreconditionError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), Error);
}

TEST_CASE("connectivity sweep boundary cases") {
  const auto full = run_connectivity_sweep(make("", 1, 1, 1, {3, 5}, 3));
  CHECK(find_row(full.summary, 3, "fraction_connected")->value == 1.0);
  CHECK(find_row(full.summary, 5, "fraction_connected")->value == 1.0);
  const auto none = run_connectivity_sweep(make("", 0, 0, 0, {3, 5}, 3));
  CHECK(find_row(none.summary, 5, "fraction_connected")->value == 0.0);
  CHECK(none.records.front().verdict == std::optional<std::string>("SUBCRITICAL_EXTENSION"));
  CHECK(none.records.front().isolated == std::optional<std::uint64_t>(8));  // n = 3
}

TEST_CASE("diameter experiment") {
  const auto full = run_diameter_experiment(make("", 1, 1, 1, {4}, 3));
  for (const auto& r : full.records) CHECK(r.diameter == std::optional<std::uint64_t>(1));
  CHECK(full.passed());

  auto c = make("", 0.6, 0.7, 0.6, {6}, 30);
  c.desk_ceiling = 8;
  const auto res = run_diameter_experiment(c);
  std::size_t skipped = 0;
  for (const auto& r : res.records) {
    if (r.skipped) {
      ++skipped;
      CHECK_FALSE(*r.connected);
      CHECK_FALSE(r.diameter.has_value());
    }
    CHECK(r.predicted_bound == std::optional<double>(510));
  }
  CHECK(skipped > 0);
  CHECK(find_row(res.summary, 6, "diameter_max")->skipped == skipped);
  CHECK(res.passed());
  CHECK_THROWS_AS(run_diameter_experiment(make("", 0.5, 0.5, 0.5, {6}, 2)), PreconditionError);
}

TEST_CASE("beta1 experiment") {
  auto c = make("", 1.0, 1.0, 0.0, {8}, 20);
  c.w = 5;
  c.t = 2;
  const auto res = run_beta1_common_neighbor(c);
  CHECK(find_row(res.summary, 8, "no_common_frequency")->value == 0.0);
  CHECK(res.passed());
  for (const auto& r : res.records) {
    CHECK(std::popcount(*r.partner) == 7);
    CHECK((*r.partner & *r.source) == *r.source);
  }
  auto bad = c;
  bad.gamma = 0.5;
  CHECK_THROWS_AS(run_beta1_common_neighbor(bad), PreconditionError);
}

TEST_CASE("drift experiment") {
  auto c = make("", 0.2, 0.8, 0.2, {10}, 20);
  c.weights = {5, 10};
  const auto res = run_weight_drift(c);
  for (const auto& r : res.records) {
    if (r.start_weight == 5) {
      CHECK(r.steps == std::optional<int>(0));
      CHECK(r.predicted_steps == std::optional<int>(0));
    }
    CHECK(r.supercritical == std::optional<bool>(false));  // beta + gamma = 1
  }
  auto lazy = c;
  lazy.backend = Backend::kLazy;
  lazy.trials = 3;
  CHECK_NOTHROW(run_weight_drift(lazy));
  auto bad = c;
  bad.gamma = 0.1;
  CHECK_THROWS_AS(run_weight_drift(bad), PreconditionError);
}

TEST_CASE("midlayer experiment") {
  auto c = make("", 0.6, 0.7, 0.6, {8}, 30);
  c.part_count = 64;
  const auto res = run_midlayer_expansion(c);
  for (const auto& r : res.records) {
    REQUIRE_FALSE(r.skipped);
    CHECK(r.layer_sizes->front() == 1);
    CHECK(r.first_layer == (*r.layer_sizes)[1]);
  }
  // a huge part count leaves no admissible edges
  auto empty = c;
  empty.part_count = 1000000000;
  empty.trials = 3;
  for (const auto& r : run_midlayer_expansion(empty).records) {
    CHECK(r.layer_sizes->at(0) == 1);
    CHECK(std::all_of(r.layer_sizes->begin() + 1, r.layer_sizes->end(), [](auto x) { return x == 0; }));
  }
  CHECK_THROWS_AS(run_midlayer_expansion(make("", 0.6, 0.7, 0.6, {7}, 2)), PreconditionError);
}

TEST_CASE("records round-trip and summaries recompute from records alone") {
  std::vector<ExperimentConfig> configs;
  configs.push_back(make("connectivity", 0.6, 0.7, 0.6, {6}, 15));
  auto d = make("diameter", 0.6, 0.7, 0.6, {6}, 15);
  d.desk_ceiling = 8;
  configs.push_back(d);
  auto m = make("midlayer", 0.6, 0.7, 0.6, {8}, 15);
  m.part_count = 4;
  configs.push_back(m);
  auto b = make("beta1", 0.5, 1, 0, {8}, 15);
  b.w = 5;
  b.t = 1;
  configs.push_back(b);
  auto w = make("drift", 0.2, 0.8, 0.2, {10}, 15);
  configs.push_back(w);
  for (const auto& c : configs) {
    INFO(c.experiment);
    const auto res = run_experiment(c);
    const auto back = reparse(res.records);
    CHECK(records_jsonl(back) == records_jsonl(res.records));
    CHECK(summary_csv(summarize_records(c.experiment, back)) == summary_csv(res.summary));
  }
}

TEST_CASE("same config and seed give byte-identical output") {
  auto c = make("connectivity", 0.6, 0.7, 0.6, {6, 8}, 10);
  CHECK(records_jsonl(run_experiment(c).records) == records_jsonl(run_experiment(c).records));
  auto other = c;
  other.seed = 7;
  CHECK(records_jsonl(run_experiment(c).records) != records_jsonl(run_experiment(other).records));
}

TEST_CASE("write_result honours the output directory override") {
  const auto dir = std::filesystem::temp_directory_path() / "kron_harness_test";
  std::filesystem::remove_all(dir);
  auto c = make("connectivity", 0.6, 0.7, 0.6, {4}, 2);
  c.label = "tiny";
  c.output_dir = (dir / "ignored").string();
  ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
  const auto paths = write_result(run_experiment(c));
  ::unsetenv(kOutputDirEnv);
  CHECK(paths.records == dir / "tiny.jsonl");
  CHECK(std::filesystem::exists(dir / "tiny_summary.csv"));
  std::ifstream in(paths.summary);
  std::string header;
  std::getline(in, header);
  CHECK(header == csv_header());
  std::filesystem::remove_all(dir);
}
