#include <fstream>
#include <sstream>

#include "cargoload/ansatz.hpp"
#include "cargoload/instance_io.hpp"
#include "cargoload/report.hpp"
#include "commands.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cargoload;
using cargoload::testing::fixture_i1;
using cargoload::testing::TempDir;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cargoload");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("gen writes deterministic instances and refuses to overwrite") {
  TempDir dir("cli-gen");
  const auto a = (dir / "a.json").string();
  const auto b = (dir / "b.json").string();
  auto r = invoke({"gen", "--seed", "7", "-n", "4", "-m", "3", "-o", a});
  REQUIRE(r.code == 0);
  CHECK(validate_instance(load_instance(a)).empty());
  REQUIRE(invoke({"gen", "--seed", "7", "-n", "4", "-m", "3", "-o", b}).code == 0);
  CHECK(slurp(a) == slurp(b));

  const auto before = slurp(a);
  auto again = invoke({"gen", "--seed", "8", "-n", "4", "-m", "3", "-o", a});
  CHECK(again.code != 0);
  CHECK(again.err.find("--force") != std::string::npos);
  CHECK(slurp(a) == before);
  CHECK(invoke({"gen", "--seed", "8", "-n", "4", "-m", "3", "-o", a, "--force"}).code == 0);
  CHECK(slurp(a) != before);

  CHECK(invoke({"gen", "-n", "4", "-o", (dir / "c.json").string()}).code != 0);
  CHECK(invoke({"gen", "--seed", "1", "-n", "0", "-o", (dir / "c.json").string()}).code != 0);
}

TEST_CASE("exact prints the solution document") {
  TempDir dir("cli-exact");
  save_instance(dir / "i1.json", fixture_i1());
  auto r = invoke({"exact", (dir / "i1.json").string()});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["optimal_weight"] == 5.0);
  CHECK(doc["optima"] == json::array({"0001", "0010"}));

  std::ofstream(dir / "bad.json") << "[1, 2";
  auto bad = invoke({"exact", (dir / "bad.json").string()});
  CHECK(bad.code != 0);
  CHECK_FALSE(bad.err.empty());

  REQUIRE(invoke({"gen", "--seed", "3", "-n", "7", "-m", "4", "-o", (dir / "big.json").string()}).code == 0);
  auto big = invoke({"exact", (dir / "big.json").string()});
  CHECK(big.code == 0);
  CHECK(json::parse(big.out)["elapsed_ms"].get<double>() < 60000.0);
}

TEST_CASE("optimize then infer on I1") {
  TempDir dir("cli-opt");
  const auto inst = (dir / "i1.json").string();
  save_instance(inst, fixture_i1());
  const auto run_dir = dir / "run";

  auto r = invoke({"optimize", inst, "-o", run_dir.string(), "--seed", "2", "--max-iterations", "120"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  for (const char* f : {"trace.csv", "checkpoint.json", "counts.json", "report.json", "histogram.svg", "trace.svg"})
    CHECK(std::filesystem::exists(run_dir / f));
  auto trace = trace_from_csv(slurp(run_dir / "trace.csv"));
  CHECK(trace.size() <= 120);
  for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k].best_cost <= trace[k - 1].best_cost);
  auto report = json::parse(slurp(run_dir / "report.json"));
  CHECK(report["optimal_weight"] == 5.0);
  CHECK(report["top"].size() <= 5);
  auto ck = load_checkpoint(run_dir / "checkpoint.json");
  CHECK(ck.n_containers == 2);
  CHECK(ck.seed == 2);

  // Inference with the optimization seed and shot count reproduces its final counts.
  const auto inf_dir = dir / "inf";
  auto i = invoke({"infer", inst, "--checkpoint", (run_dir / "checkpoint.json").string(), "-o", inf_dir.string(),
                "--seed", "2", "--shots", "1000"});
  REQUIRE_MESSAGE(i.code == 0, i.err);
  CHECK(json::parse(slurp(inf_dir / "counts.json")) == json::parse(slurp(run_dir / "counts.json")));
  CHECK(slurp(inf_dir / "histogram.svg").find("bar optimal") != std::string::npos);

  auto i2 = invoke({"infer", inst, "--checkpoint", (run_dir / "checkpoint.json").string(), "-o",
                 (dir / "inf2").string(), "--seed", "5"});
  REQUIRE(i2.code == 0);
  auto rep2 = json::parse(slurp(dir / "inf2" / "report.json"));
  CHECK(rep2["shots"] == 10000);
  CHECK(rep2["top"].size() <= 5);
  bool any_optimal = false;
  for (const auto& row : rep2["top"]) any_optimal = any_optimal || row["optimal"] == true;
  CHECK(any_optimal);
}

TEST_CASE("infer on converged I1 checkpoints puts an optimum on top") {
  TempDir dir("cli-converged");
  const auto inst = (dir / "i1.json").string();
  save_instance(inst, fixture_i1());
  std::ofstream(dir / "cfg.json") << R"({"exact_mode": true, "cvar_epsilon": 1.0, "max_iterations": 1000,
    "simplex_step": 1.0})";
  int wins = 0;
  for (int seed = 0; seed < 5; ++seed) {
    const auto run_dir = dir / ("run" + std::to_string(seed));
    REQUIRE(invoke({"optimize", inst, "-c", (dir / "cfg.json").string(), "-o", run_dir.string(), "--seed",
                    std::to_string(seed)})
                .code == 0);
    const auto inf_dir = dir / ("inf" + std::to_string(seed));
    REQUIRE(invoke({"infer", inst, "--checkpoint", (run_dir / "checkpoint.json").string(), "-o", inf_dir.string(),
                    "--seed", std::to_string(100 + seed)})
                .code == 0);
    auto top = json::parse(slurp(inf_dir / "report.json"))["top"][0];
    if (top["optimal"] == true && top["probability"].get<double>() >= 0.2) ++wins;
  }
  CHECK(wins >= 4);
}

TEST_CASE("optimize options and failures") {
  TempDir dir("cli-opt-flags");
  const auto inst = (dir / "i1.json").string();
  save_instance(inst, fixture_i1());

  auto no_seed = invoke({"optimize", inst, "-o", (dir / "x").string()});
  CHECK(no_seed.code != 0);
  CHECK(no_seed.err.find("seed") != std::string::npos);

  std::ofstream(dir / "cfg.json") << R"({"seed": 4, "method": "cobyla", "max_iterations": 30, "exact_mode": true,
    "ansatz": {"blocks": 1, "final_ry": true}})";
  auto from_cfg = invoke({"optimize", inst, "-c", (dir / "cfg.json").string(), "-o", (dir / "y").string(),
                       "--dump-state", (dir / "sv.bin").string()});
  REQUIRE_MESSAGE(from_cfg.code == 0, from_cfg.err);
  auto rep = json::parse(slurp(dir / "y" / "report.json"));
  CHECK(rep["method"] == "cobyla");
  CHECK(rep["evaluations"].get<int>() <= 30);
  CHECK(std::filesystem::file_size(dir / "sv.bin") == 8 + 16 * 16);
  CHECK(load_checkpoint(dir / "y" / "checkpoint.json").layout.final_ry);

  std::ofstream(dir / "warm.json") << json{{"seed", 5}, {"max_iterations", 10}, {"ansatz", {{"blocks", 1}, {"final_ry", true}}},
                                           {"warm_start_path", (dir / "y" / "checkpoint.json").string()}}
                                          .dump();
  CHECK(invoke({"optimize", inst, "-c", (dir / "warm.json").string(), "-o", (dir / "w").string()}).code == 0);
  auto spsa_warm = invoke({"optimize", inst, "-c", (dir / "warm.json").string(), "-o", (dir / "w2").string(), "--seed",
                        "1", "--method", "spsa"});
  CHECK(spsa_warm.code == 0);

  std::ofstream(dir / "warm_bad.json")
      << json{{"seed", 5}, {"warm_start_path", (dir / "y" / "checkpoint.json").string()}}.dump();
  CHECK(invoke({"optimize", inst, "-c", (dir / "warm_bad.json").string(), "-o", (dir / "w3").string()}).code != 0);

  CHECK(invoke({"optimize", inst, "-o", (dir / "z").string(), "--seed", "1", "--epsilon", "0"}).code != 0);
  CHECK(invoke({"optimize", inst, "-o", (dir / "z").string(), "--seed", "1", "--method", "newton"}).code != 0);
  CHECK(invoke({"optimize", inst, "-o", (dir / "z").string(), "--seed", "1", "--qubit-budget", "3"}).code != 0);
  CHECK(invoke({"optimize", inst, "-o", (dir / "z").string(), "--seed", "1", "--qubit-budget", "29"}).code != 0);
}

TEST_CASE("infer refuses a checkpoint for a different instance") {
  TempDir dir("cli-infer");
  save_instance(dir / "i1.json", fixture_i1());
  save_instance(dir / "g.json", generate_instance(1, 2, 3));
  REQUIRE(invoke({"optimize", (dir / "i1.json").string(), "-o", (dir / "run").string(), "--seed", "1",
               "--max-iterations", "5"})
              .code == 0);
  auto r = invoke({"infer", (dir / "g.json").string(), "--checkpoint", (dir / "run" / "checkpoint.json").string(), "-o",
                (dir / "inf").string(), "--seed", "1"});
  CHECK(r.code != 0);
  CHECK(r.err.find("checkpoint") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir / "inf" / "report.json"));

  auto no_seed = invoke({"infer", (dir / "i1.json").string(), "--checkpoint",
                      (dir / "run" / "checkpoint.json").string(), "-o", (dir / "inf").string()});
  CHECK(no_seed.code != 0);
}

TEST_CASE("report renders traces and counts") {
  TempDir dir("cli-report");
  save_instance(dir / "i1.json", fixture_i1());
  REQUIRE(invoke({"optimize", (dir / "i1.json").string(), "-o", (dir / "run").string(), "--seed", "3",
               "--max-iterations", "40"})
              .code == 0);

  REQUIRE(invoke({"report", (dir / "run" / "trace.csv").string(), "-o", (dir / "t.svg").string()}).code == 0);
  CHECK(slurp(dir / "t.svg").find("<polyline class=\"cost\"") != std::string::npos);

  REQUIRE(invoke({"report", (dir / "run" / "counts.json").string(), "-o", (dir / "c.svg").string()}).code == 0);
  CHECK(slurp(dir / "c.svg").find("<rect class=\"bar") != std::string::npos);

  REQUIRE(invoke({"report", (dir / "run" / "report.json").string(), "-o", (dir / "r.svg").string()}).code == 0);
  CHECK(slurp(dir / "r.svg").find("<rect") != std::string::npos);

  std::ofstream(dir / "empty.csv") << "";
  CHECK(invoke({"report", (dir / "empty.csv").string(), "-o", (dir / "e.svg").string()}).code != 0);
  std::ofstream(dir / "header.csv") << "iteration,cost,best_energy,p_optimal\n";
  CHECK(invoke({"report", (dir / "header.csv").string(), "-o", (dir / "e.svg").string()}).code != 0);
  std::ofstream(dir / "other.json") << R"({"hello": 1})";
  CHECK(invoke({"report", (dir / "other.json").string(), "-o", (dir / "e.svg").string()}).code != 0);
  CHECK_FALSE(std::filesystem::exists(dir / "e.svg"));
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code != 0);
  CHECK(invoke({"launch"}).code != 0);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--threads", "1", "exact", "/nonexistent/instance.json"}).code != 0);
}
