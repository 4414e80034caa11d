#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "json.hpp"
#include "kron/graph.hpp"
#include "kron/model.hpp"
#include "kron/sampler.hpp"

namespace kron::harness {

inline constexpr const char* kOutputDirEnv = "KRON_OUTPUT_DIR";

enum class Backend { kGrouped, kLazy };

inline const char* to_string(Backend b) { return b == Backend::kGrouped ? "grouped" : "lazy"; }

inline Backend parse_backend(const std::string& s) {
  if (s == "grouped") return Backend::kGrouped;
  if (s == "lazy") return Backend::kLazy;
  throw PreconditionError("unknown backend '" + s + "' (grouped | lazy)");
}

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{"connectivity", "diameter", "midlayer", "beta1", "drift"};
  return kinds;
}

struct ExperimentConfig {
  std::string experiment;  // one of experiment_kinds()
  std::string label;       // output file stem; defaults to experiment
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::vector<int> n_values;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  Backend backend = Backend::kGrouped;
  std::string output_dir = "results";

  std::optional<double> epsilon;            // midlayer, drift
  std::vector<int> weights;                 // drift start weights (default {n})
  int w = 0;                                // beta1 weight of v
  int t = 0;                                // beta1 distance
  std::optional<std::int64_t> desk_ceiling; // diameter
  std::size_t part_count = 0;               // midlayer split parts (0 = n^2)

  [[nodiscard]] KroneckerParams params() const { return KroneckerParams(alpha, beta, gamma); }
  [[nodiscard]] std::string stem() const { return label.empty() ? experiment : label; }

  void validate() const {
    bool known = false;
    for (const auto& k : experiment_kinds()) known = known || k == experiment;
    if (!known) throw PreconditionError("unknown experiment '" + experiment + "'");
    (void)params();
    if (trials < 1) throw PreconditionError("trials must be >= 1");
    if (n_values.empty()) throw PreconditionError("experiment needs at least one n");
    const int cap = backend == Backend::kLazy ? 14 : kDefaultGraphDimensionCap;
    for (int n : n_values) {
      if (n < 1 || n > cap) {
        throw PreconditionError("n=" + std::to_string(n) + " outside [1," + std::to_string(cap) + "] for backend " +
                                to_string(backend));
      }
    }
  }

  // Output directory after the environment override.
  [[nodiscard]] std::filesystem::path resolved_output_dir() const {
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
    return output_dir;
  }
};

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    try {
      out.push_back(std::stoi(item.substr(first)));
    } catch (const std::exception&) {
      throw PreconditionError("bad integer list entry '" + item + "'");
    }
  }
  return out;
}

// One section per experiment:
//
//   [label]
//   experiment = connectivity
//   alpha = 0.6
//   beta = 0.7
//   gamma = 0.6
//   n = 6, 8, 10, 12
//   trials = 100
//   seed = 42
//   backend = grouped
//   output = results
inline std::vector<ExperimentConfig> parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw PreconditionError(std::string("config: ") + e.what());
  }
  static const std::vector<std::string> allowed{"experiment", "alpha", "beta",   "gamma",   "n",     "trials",
                                                "seed",       "backend", "output", "epsilon", "weights", "w",
                                                "t",          "ceiling", "parts"};
  std::vector<ExperimentConfig> out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw PreconditionError("config: key '" + section + "' outside a [section]");
    for (const auto& [key, _] : body) {
      bool ok = false;
      for (const auto& a : allowed) ok = ok || a == key;
      if (!ok) throw PreconditionError("config [" + section + "]: unknown key '" + key + "'");
    }
    ExperimentConfig c;
    c.label = section;
    try {
      c.experiment = body.get<std::string>("experiment", section);
      c.alpha = body.get<double>("alpha");
      c.beta = body.get<double>("beta");
      c.gamma = body.get<double>("gamma");
      c.n_values = parse_int_list(body.get<std::string>("n"));
      c.trials = body.get<std::size_t>("trials", 1);
      c.seed = body.get<std::uint64_t>("seed");
      c.backend = parse_backend(body.get<std::string>("backend", "grouped"));
      c.output_dir = body.get<std::string>("output", "results");
      if (auto e = body.get_optional<double>("epsilon")) c.epsilon = *e;
      if (auto ws = body.get_optional<std::string>("weights")) c.weights = parse_int_list(*ws);
      c.w = body.get<int>("w", 0);
      c.t = body.get<int>("t", 0);
      if (auto ceil = body.get_optional<std::int64_t>("ceiling")) c.desk_ceiling = *ceil;
      c.part_count = body.get<std::size_t>("parts", 0);
    } catch (const boost::property_tree::ptree_error& e) {
      throw PreconditionError("config [" + section + "]: " + e.what());
    }
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ExperimentConfig> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  return parse_config(in);
}

// ---------------------------------------------------------------------------
// Records

// One flat schema for every experiment; fields an experiment does not measure
// stay empty and serialize as null.
struct ResultRecord {
  std::string experiment;
  std::string label;
  int n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string backend;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool skipped = false;
  std::optional<std::string> skip_reason;

  // graph-level measurements
  std::optional<std::string> verdict;
  std::optional<bool> connected;
  std::optional<std::uint64_t> components;
  std::optional<std::uint64_t> edge_count;
  std::optional<double> degree_mean;
  std::optional<std::uint64_t> degree_max;
  std::optional<std::uint64_t> isolated;
  std::optional<std::uint64_t> diameter;
  std::optional<std::string> diameter_method;

  // vertex-level measurements
  std::optional<std::uint64_t> source;
  std::optional<std::uint64_t> partner;
  std::optional<int> i_size;
  std::optional<std::vector<std::uint64_t>> layer_sizes;
  std::optional<std::uint64_t> first_layer;
  std::optional<int> growth_j;
  std::optional<int> start_weight;
  std::optional<int> target_weight;
  std::optional<std::uint64_t> count_target_class;
  std::optional<std::uint64_t> count_target_weight;
  std::optional<std::uint64_t> count_middle;
  std::optional<int> steps;
  std::optional<bool> no_common_neighbor;
  std::optional<bool> supercritical;
  std::optional<bool> within_eta_range;  // t < eta n

  // theory references
  std::optional<double> predicted_bound;
  std::optional<double> desk_ceiling;
  std::optional<double> expected_value;
  std::optional<double> expected_target_weight;
  std::optional<double> expected_middle;
  std::optional<std::uint64_t> law_trials;
  std::optional<double> law_rho;
  std::optional<int> predicted_steps;
  std::optional<double> exp_bound;
};

namespace detail {
template <typename T>
void put(nlohmann::ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
  else j[key] = nullptr;
}
template <typename T>
void get(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) v = it->get<T>();
  else v.reset();
}
}  // namespace detail

inline nlohmann::ordered_json to_json(const ResultRecord& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["label"] = r.label;
  j["n"] = r.n;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["stream"] = r.stream;
  j["backend"] = r.backend;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["gamma"] = r.gamma;
  j["skipped"] = r.skipped;
  using detail::put;
  put(j, "skip_reason", r.skip_reason);
  put(j, "verdict", r.verdict);
  put(j, "connected", r.connected);
  put(j, "components", r.components);
  put(j, "edge_count", r.edge_count);
  put(j, "degree_mean", r.degree_mean);
  put(j, "degree_max", r.degree_max);
  put(j, "isolated", r.isolated);
  put(j, "diameter", r.diameter);
  put(j, "diameter_method", r.diameter_method);
  put(j, "source", r.source);
  put(j, "partner", r.partner);
  put(j, "i_size", r.i_size);
  put(j, "layer_sizes", r.layer_sizes);
  put(j, "first_layer", r.first_layer);
  put(j, "growth_j", r.growth_j);
  put(j, "start_weight", r.start_weight);
  put(j, "target_weight", r.target_weight);
  put(j, "count_target_class", r.count_target_class);
  put(j, "count_target_weight", r.count_target_weight);
  put(j, "count_middle", r.count_middle);
  put(j, "steps", r.steps);
  put(j, "no_common_neighbor", r.no_common_neighbor);
  put(j, "supercritical", r.supercritical);
  put(j, "within_eta_range", r.within_eta_range);
  put(j, "predicted_bound", r.predicted_bound);
  put(j, "desk_ceiling", r.desk_ceiling);
  put(j, "expected_value", r.expected_value);
  put(j, "expected_target_weight", r.expected_target_weight);
  put(j, "expected_middle", r.expected_middle);
  put(j, "law_trials", r.law_trials);
  put(j, "law_rho", r.law_rho);
  put(j, "predicted_steps", r.predicted_steps);
  put(j, "exp_bound", r.exp_bound);
  return j;
}

inline ResultRecord record_from_json(const nlohmann::json& j) {
  ResultRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.n = j.at("n").get<int>();
  r.trial = j.at("trial").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.stream = j.at("stream").get<std::uint64_t>();
  r.backend = j.at("backend").get<std::string>();
  r.alpha = j.at("alpha").get<double>();
  r.beta = j.at("beta").get<double>();
  r.gamma = j.at("gamma").get<double>();
  r.skipped = j.at("skipped").get<bool>();
  using detail::get;
  get(j, "skip_reason", r.skip_reason);
  get(j, "verdict", r.verdict);
  get(j, "connected", r.connected);
  get(j, "components", r.components);
  get(j, "edge_count", r.edge_count);
  get(j, "degree_mean", r.degree_mean);
  get(j, "degree_max", r.degree_max);
  get(j, "isolated", r.isolated);
  get(j, "diameter", r.diameter);
  get(j, "diameter_method", r.diameter_method);
  get(j, "source", r.source);
  get(j, "partner", r.partner);
  get(j, "i_size", r.i_size);
  get(j, "layer_sizes", r.layer_sizes);
  get(j, "first_layer", r.first_layer);
  get(j, "growth_j", r.growth_j);
  get(j, "start_weight", r.start_weight);
  get(j, "target_weight", r.target_weight);
  get(j, "count_target_class", r.count_target_class);
  get(j, "count_target_weight", r.count_target_weight);
  get(j, "count_middle", r.count_middle);
  get(j, "steps", r.steps);
  get(j, "no_common_neighbor", r.no_common_neighbor);
  get(j, "supercritical", r.supercritical);
  get(j, "within_eta_range", r.within_eta_range);
  get(j, "predicted_bound", r.predicted_bound);
  get(j, "desk_ceiling", r.desk_ceiling);
  get(j, "expected_value", r.expected_value);
  get(j, "expected_target_weight", r.expected_target_weight);
  get(j, "expected_middle", r.expected_middle);
  get(j, "law_trials", r.law_trials);
  get(j, "law_rho", r.law_rho);
  get(j, "predicted_steps", r.predicted_steps);
  get(j, "exp_bound", r.exp_bound);
  return r;
}

// One summary statistic for one (n, group) cell.
struct SummaryRow {
  std::string experiment;
  std::string label;
  int n = 0;
  std::string group;       // sub-population, e.g. "w=14" or "I=2"; empty for all
  std::uint64_t trials = 0;
  std::uint64_t used = 0;  // trials contributing to value
  std::uint64_t skipped = 0;
  std::string statistic;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<bool> passed;  // unset for descriptive statistics
};

inline std::string csv_header() {
  return "experiment,label,n,group,trials,used,skipped,statistic,value,reference,passed";
}

inline std::string to_csv(const SummaryRow& s) {
  std::ostringstream o;
  o << s.experiment << ',' << s.label << ',' << s.n << ',' << s.group << ',' << s.trials << ',' << s.used << ','
    << s.skipped << ',' << s.statistic << ',' << format_double(s.value) << ','
    << (s.reference ? format_double(*s.reference) : "") << ',' << (s.passed ? (*s.passed ? "true" : "false") : "");
  return o.str();
}

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ResultRecord> records;
  std::vector<SummaryRow> summary;

  [[nodiscard]] bool passed() const {
    for (const auto& s : summary)
      if (s.passed && !*s.passed) return false;
    return true;
  }
};

inline std::string records_jsonl(const std::vector<ResultRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& s : rows) out += to_csv(s) + "\n";
  return out;
}

inline std::vector<ResultRecord> read_records_jsonl(std::istream& in) {
  std::vector<ResultRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

struct OutputPaths {
  std::filesystem::path records;
  std::filesystem::path summary;
};

inline OutputPaths write_result(const ExperimentResult& result) {
  const auto dir = result.config.resolved_output_dir();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  OutputPaths paths{dir / (result.config.stem() + ".jsonl"), dir / (result.config.stem() + "_summary.csv")};
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
    if (!out) throw Error("write failed for " + p.string());
  };
  write(paths.records, records_jsonl(result.records));
  write(paths.summary, summary_csv(result.summary));
  return paths;
}

}  // namespace kron::harness
