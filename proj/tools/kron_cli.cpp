// Command-line entry point: gen, analyze, constants, classify, experiment.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kron/graph.hpp"
#include "kron/harness.hpp"
#include "kron/sampler.hpp"
#include "kron/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

struct ParamFlags {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

void add_param_flags(CLI::App* app, ParamFlags& p) {
  app->add_option("--alpha", p.alpha, "alpha (edge weight for shared ones)")->required();
  app->add_option("--beta", p.beta, "beta (edge weight for differing bits)")->required();
  app->add_option("--gamma", p.gamma, "gamma (edge weight for shared zeros)")->required();
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_gen(const ParamFlags& pf, int n, std::optional<std::uint64_t> seed_flag, std::uint64_t stream,
            const std::string& backend, const std::string& out_path) {
  const kron::KroneckerParams params(pf.alpha, pf.beta, pf.gamma);
  const std::uint64_t seed = seed_flag ? *seed_flag : fresh_seed();
  if (!seed_flag) std::cerr << "seed=" << seed << '\n';
  const kron::SampleSeed s{seed, stream};
  const kron::GraphStore g = backend == "lazy" ? kron::LazyKronecker(params, n, s).materialize()
                                               : kron::sample_graph(params, n, s);
  kron::EdgeListHeader h;
  h.n = n;
  h.alpha = pf.alpha;
  h.beta = pf.beta;
  h.gamma = pf.gamma;
  h.seed = seed;
  if (stream != 0) h.annotations.push_back("stream=" + std::to_string(stream));
  if (out_path.empty() || out_path == "-") {
    kron::write_edge_list(std::cout, g, h);
  } else {
    std::ofstream out(out_path);
    if (!out) throw kron::Error("cannot write " + out_path);
    kron::write_edge_list(out, g, h);
    std::cerr << "wrote " << g.vertex_count() << " vertices, " << g.edge_count() << " edges to " << out_path << '\n';
  }
  return kExitOk;
}

int cmd_analyze(const std::string& in_path, bool with_diameter, bool as_json) {
  std::ifstream in(in_path);
  if (!in) throw kron::Error("cannot open " + in_path);
  const auto list = kron::read_edge_list(in);
  const auto& g = list.graph;
  const auto comps = kron::connected_components(g);
  std::size_t dmin = g.vertex_count() > 0 ? g.degree(0) : 0;
  std::size_t dmax = 0;
  std::size_t isolated = 0;
  for (kron::vertex_t v = 0; v < g.vertex_count(); ++v) {
    dmin = std::min(dmin, g.degree(v));
    dmax = std::max(dmax, g.degree(v));
    isolated += g.degree(v) == 0 ? 1 : 0;
  }
  const double dmean = g.vertex_count() ? 2.0 * static_cast<double>(g.edge_count()) / g.vertex_count() : 0.0;

  nlohmann::ordered_json j;
  j["n"] = list.header.n;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["components"] = comps.count();
  j["largest_component"] = comps.count() ? comps.sizes[comps.largest()] : 0;
  j["connected"] = comps.count() == 1;
  j["isolated"] = isolated;
  j["degree_min"] = dmin;
  j["degree_mean"] = dmean;
  j["degree_max"] = dmax;
  if (with_diameter) {
    const auto d = kron::diameter_exact(g);
    j["diameter"] = d.diameter;
    j["diameter_scope"] = d.connected ? "graph" : "largest_component";
    j["diameter_method"] = d.method == kron::DiameterMethod::kIFub ? "ifub" : "all_pairs";
  }
  if (as_json) {
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : j.items()) std::cout << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return kExitOk;
}

int cmd_constants(const ParamFlags& pf, bool as_json) {
  (void)kron::KroneckerParams(pf.alpha, pf.beta, pf.gamma);  // validates the input
  // Non-equal alpha, gamma: constants of the reduced model alpha := gamma.
  const bool reduced = std::fabs(pf.alpha - pf.gamma) > kron::theory::kEqualityTolerance;
  if (reduced) std::cerr << "note: alpha != gamma, using alpha := gamma = " << pf.gamma << '\n';
  const auto t = kron::theory::constants_pipeline(kron::KroneckerParams(pf.gamma, pf.beta, pf.gamma));
  nlohmann::ordered_json j;
  for (const auto& e : t.entries()) {
    if (e.integral) j[e.key] = static_cast<std::int64_t>(e.value);
    else j[e.key] = static_cast<double>(e.value);
  }
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  std::cout << j.dump() << '\n';
  for (const auto& e : t.entries()) {
    if (e.integral) std::cout << e.key << '=' << static_cast<std::int64_t>(e.value) << '\n';
    else std::cout << e.key << '=' << kron::format_double(static_cast<double>(e.value)) << '\n';
  }
  return kExitOk;
}

int cmd_classify(const ParamFlags& pf) {
  const auto v = kron::theory::classify_connectivity(kron::KroneckerParams(pf.alpha, pf.beta, pf.gamma));
  std::cout << kron::theory::to_string(v.verdict) << " (case " << v.matched_case << ": " << v.condition << ")\n";
  return kExitOk;
}

int run_configs(const std::vector<kron::harness::ExperimentConfig>& configs, bool quiet) {
  bool all_passed = true;
  for (const auto& c : configs) {
    const auto result = kron::harness::run_experiment(c);
    const auto paths = kron::harness::write_result(result);
    if (!quiet) std::cout << kron::harness::summary_csv(result.summary);
    std::cerr << c.stem() << ": " << result.records.size() << " records -> " << paths.records.string() << ", "
              << paths.summary.string() << '\n';
    all_passed = all_passed && result.passed();
  }
  return all_passed ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker graph generator, analyzer and experiment runner"};
  app.require_subcommand(1);

  ParamFlags gen_p;
  int gen_n = 0;
  std::optional<std::uint64_t> gen_seed;
  std::uint64_t gen_stream = 0;
  std::string gen_backend = "grouped";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "sample a graph and write an edge list");
  add_param_flags(gen, gen_p);
  gen->add_option("--n", gen_n, "label dimension")->required()->check(CLI::Range(1, 30));
  gen->add_option("--seed", gen_seed, "random seed (generated and printed when omitted)");
  gen->add_option("--stream", gen_stream, "stream index under the seed");
  gen->add_option("--backend", gen_backend, "grouped or lazy")->check(CLI::IsMember({"grouped", "lazy"}));
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  std::string an_in;
  bool an_diameter = false;
  bool an_json = false;
  auto* analyze = app.add_subcommand("analyze", "report components, degrees and diameter of an edge list");
  analyze->add_option("--in", an_in, "edge-list file")->required();
  analyze->add_flag("--diameter", an_diameter, "compute the exact diameter");
  analyze->add_flag("--json", an_json, "print JSON");

  ParamFlags con_p;
  bool con_json = false;
  auto* constants = app.add_subcommand("constants", "print the derived theory constants");
  add_param_flags(constants, con_p);
  constants->add_flag("--json", con_json, "print JSON only");

  ParamFlags cls_p;
  auto* classify = app.add_subcommand("classify", "print the connectivity verdict");
  add_param_flags(classify, cls_p);

  std::string ex_config;
  std::vector<std::string> ex_sections;
  std::string ex_kind;
  kron::harness::ExperimentConfig ex_flags;
  std::string ex_n;
  std::string ex_weights;
  std::string ex_backend = "grouped";
  std::optional<std::uint64_t> ex_seed;
  std::optional<double> ex_eps;
  std::optional<std::int64_t> ex_ceiling;
  std::optional<std::string> ex_out;
  bool ex_quiet = false;
  auto* experiment = app.add_subcommand("experiment", "run a harness experiment");
  auto* config_opt = experiment->add_option("--config", ex_config, "INI config file")->check(CLI::ExistingFile);
  experiment->add_option("--section", ex_sections, "run only these sections")->needs(config_opt);
  auto* kind_opt = experiment->add_option("--kind", ex_kind, "experiment kind (without --config)")
                       ->check(CLI::IsMember(kron::harness::experiment_kinds()));
  experiment->add_option("--alpha", ex_flags.alpha);
  experiment->add_option("--beta", ex_flags.beta);
  experiment->add_option("--gamma", ex_flags.gamma);
  experiment->add_option("--n", ex_n, "comma-separated dimensions");
  experiment->add_option("--trials", ex_flags.trials);
  experiment->add_option("--seed", ex_seed);
  experiment->add_option("--backend", ex_backend)->check(CLI::IsMember({"grouped", "lazy"}));
  experiment->add_option("--label", ex_flags.label);
  experiment->add_option("--output", ex_out, "output directory");
  experiment->add_option("--epsilon", ex_eps);
  experiment->add_option("--weights", ex_weights, "drift start weights");
  experiment->add_option("--w", ex_flags.w, "beta1 weight of v");
  experiment->add_option("--t", ex_flags.t, "beta1 distance");
  experiment->add_option("--ceiling", ex_ceiling, "diameter ceiling");
  experiment->add_option("--parts", ex_flags.part_count, "midlayer split parts");
  experiment->add_flag("--quiet", ex_quiet, "do not print the summary");
  config_opt->excludes(kind_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_p, gen_n, gen_seed, gen_stream, gen_backend, gen_out);
    if (*analyze) return cmd_analyze(an_in, an_diameter, an_json);
    if (*constants) return cmd_constants(con_p, con_json);
    if (*classify) return cmd_classify(cls_p);
    if (*experiment) {
      std::vector<kron::harness::ExperimentConfig> configs;
      if (!ex_config.empty()) {
        for (auto& c : kron::harness::load_config(ex_config)) {
          if (!ex_sections.empty() && std::find(ex_sections.begin(), ex_sections.end(), c.label) == ex_sections.end())
            continue;
          if (ex_out) c.output_dir = *ex_out;
          configs.push_back(std::move(c));
        }
        if (configs.empty()) throw kron::PreconditionError("no matching config sections");
      } else {
        if (ex_kind.empty()) throw kron::PreconditionError("experiment needs --config or --kind");
        ex_flags.experiment = ex_kind;
        ex_flags.n_values = kron::harness::parse_int_list(ex_n);
        ex_flags.weights = kron::harness::parse_int_list(ex_weights);
        ex_flags.backend = kron::harness::parse_backend(ex_backend);
        ex_flags.epsilon = ex_eps;
        ex_flags.desk_ceiling = ex_ceiling;
        if (ex_out) ex_flags.output_dir = *ex_out;
        ex_flags.seed = ex_seed ? *ex_seed : fresh_seed();
        if (!ex_seed) std::cerr << "seed=" << ex_flags.seed << '\n';
        ex_flags.validate();
        configs.push_back(ex_flags);
      }
      return run_configs(configs, ex_quiet);
    }
  } catch (const kron::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
