#include "catch_amalgamated.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "kron/graph.hpp"
#include "kron/sampler.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KRON_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch() {
  auto d = std::filesystem::temp_directory_path() / "kron_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("classify") {
  const auto r = run("classify --alpha 0.5 --beta 0.5 --gamma 0.5");
  CHECK(r.code == 0);
  CHECK(r.out == "AAS_DISCONNECTED (case 1: β+γ=1, β≠1)\n");
  CHECK(run("classify --alpha 0.6 --beta 0.7 --gamma 0.6").out.rfind("AAS_CONNECTED", 0) == 0);
}

TEST_CASE("constants prints JSON and a key=value list ending with a") {
  const auto r = run("constants --alpha 0.6 --beta 0.7 --gamma 0.6");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"a\":510") != std::string::npos);
  CHECK(r.out.find("c=504\n") != std::string::npos);
  CHECK(r.out.size() >= 6);
  CHECK(r.out.substr(r.out.size() - 6) == "a=510\n");
  CHECK(run("constants --alpha 0.5 --beta 0.5 --gamma 0.5").code == 2);
}

TEST_CASE("gen then analyze round-trips the edge multiset") {
  const auto file = scratch() / "g.txt";
  const auto gen = run("gen --n 10 --alpha 0.6 --beta 0.7 --gamma 0.6 --seed 42 --out " + file.string());
  REQUIRE(gen.code == 0);
  std::ifstream in(file);
  const auto list = kron::read_edge_list(in);
  const auto direct = kron::sample_graph(kron::KroneckerParams(0.6, 0.7, 0.6), 10, {42, 0});
  CHECK(list.graph.edges() == direct.edges());

  const auto an = run("analyze --in " + file.string() + " --diameter");
  CHECK(an.code == 0);
  CHECK(an.out.find("components=") != std::string::npos);
  CHECK(an.out.find("diameter=" + std::to_string(kron::diameter_exact(direct).diameter) + "\n") != std::string::npos);
  CHECK(an.out.find("edges=" + std::to_string(direct.edge_count()) + "\n") != std::string::npos);
  const auto js = run("analyze --json --in " + file.string());
  CHECK(js.out.find("\"edges\": " + std::to_string(direct.edge_count())) != std::string::npos);
}

TEST_CASE("experiment from config writes outputs and is reproducible") {
  const auto dir = scratch() / "exp";
  std::filesystem::remove_all(dir);
  const auto cfg = scratch() / "exp.ini";
  {
    std::ofstream out(cfg);
    out << "[sweep]\nexperiment = connectivity\nalpha = 0.6\nbeta = 0.7\ngamma = 0.6\nn = 6\ntrials = 5\nseed = 3\n"
        << "output = " << dir.string() << "\n";
  }
  REQUIRE(run("experiment --quiet --config " + cfg.string()).code == 0);
  std::ifstream first(dir / "sweep.jsonl");
  std::stringstream a;
  a << first.rdbuf();
  REQUIRE(run("experiment --quiet --config " + cfg.string()).code == 0);
  std::ifstream second(dir / "sweep.jsonl");
  std::stringstream b;
  b << second.rdbuf();
  CHECK(!a.str().empty());
  CHECK(a.str() == b.str());
  CHECK(std::filesystem::exists(dir / "sweep_summary.csv"));

  const auto flags = run("experiment --kind connectivity --alpha 1 --beta 1 --gamma 1 --n 3 --trials 2 --seed 1 "
                         "--output " + dir.string());
  CHECK(flags.code == 0);
  CHECK(flags.out.find("fraction_connected,1,") != std::string::npos);
}

TEST_CASE("failed assertions exit 1") {
  const auto dir = scratch() / "fail";
  // ceiling 0 cannot hold for any connected sample
  const auto r = run("experiment --quiet --kind diameter --alpha 1 --beta 1 --gamma 1 --n 3 --trials 2 --seed 1 "
                     "--ceiling 0 --output " + dir.string());
  CHECK(r.code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("classify --alpha 0.5 --beta 0.5").code == 2);
  CHECK(run("classify --alpha 0.5 --beta 0.5 --gamma 0.5 --frobnicate 1").code == 2);
  CHECK(run("classify --alpha 1.5 --beta 0.5 --gamma 0.5").code == 2);
  CHECK(run("analyze --in /nonexistent/file").code == 2);
  CHECK(run("experiment --config /nonexistent/file").code == 2);
  CHECK(run("experiment --kind connectivity --alpha 0.6 --beta 0.7 --gamma 0.6 --n 40 --seed 1").code == 2);
  CHECK(run("gen --n 31 --alpha 0.6 --beta 0.7 --gamma 0.6").code == 2);
}
