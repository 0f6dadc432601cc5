#include <algorithm>
#include <set>

#include "cargoload/ansatz.hpp"
#include "cargoload/errors.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cargoload;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> rzz_pairs(const CircuitIR& c) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& g : c.gates)
    if (g.kind == GateKind::RZZ) out.emplace_back(g.targets[0], g.targets[1]);
  return out;
}

}  // namespace

TEST_CASE("28-qubit two-block ring layout has 56 + 56 gates") {
  auto c = build_circuit(28, 2, Entanglement::Ring, false);
  CHECK(c.count(GateKind::RY) == 56);
  CHECK(c.count(GateKind::RZZ) == 56);
  CHECK(parameter_count(28, 2, Entanglement::Ring, false) == 112);
}

TEST_CASE("five-qubit ring block") {
  auto c = build_circuit(5, 1, Entanglement::Ring, true);
  CHECK(c.count(GateKind::RY) == 10);
  CHECK(c.count(GateKind::RZZ) == 5);
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(rzz_pairs(c) == std::vector<P>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(parameter_count(5, 1, Entanglement::Ring, true) == 15);

  // RY layer, U block, RY layer.
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(c.gates[k].kind == GateKind::RY);
    CHECK(c.gates[k].targets[0] == k);
    CHECK(c.gates[10 + k].kind == GateKind::RY);
    CHECK(c.gates[10 + k].targets[0] == k);
  }
}

TEST_CASE("smallest circuit") {
  auto c = build_circuit(2, 1, Entanglement::Ladder, true);
  CHECK(c.count(GateKind::RY) == 4);
  CHECK(c.count(GateKind::RZZ) == 1);
  CHECK(c.parameter_count() == 5);
  CHECK(parameter_count(2, 1, Entanglement::Ladder, true) == 5);
}

TEST_CASE("gate counts and parameter indexing over the layout grid") {
  for (std::size_t n = 2; n <= 28; ++n)
    for (std::size_t L = 1; L <= 4; ++L)
      for (auto ent : {Entanglement::Ladder, Entanglement::Ring})
        for (bool fry : {false, true}) {
          auto c = build_circuit(n, L, ent, fry);
          const std::size_t ry = n * (L + (fry ? 1 : 0));
          const std::size_t rzz = L * (ent == Entanglement::Ring ? n : n - 1);
          REQUIRE(c.count(GateKind::RY) == ry);
          REQUIRE(c.count(GateKind::RZZ) == rzz);
          REQUIRE(parameter_count(n, L, ent, fry) == c.gates.size());
          for (std::size_t g = 0; g < c.gates.size(); ++g) {
            const auto& gate = c.gates[g];
            REQUIRE(gate.param_index == g);
            REQUIRE(gate.targets[0] < n);
            if (gate.kind == GateKind::RZZ) {
              REQUIRE(gate.targets[1] < n);
              REQUIRE(gate.targets[0] != gate.targets[1]);
            }
          }
        }
}

TEST_CASE("build_circuit rejects degenerate shapes") {
  CHECK_THROWS_AS(build_circuit(1, 1, Entanglement::Ring, false), DomainError);
  CHECK_THROWS_AS(build_circuit(4, 0, Entanglement::Ring, false), DomainError);
  CHECK_THROWS_AS(parameter_count(1, 1, Entanglement::Ladder, true), DomainError);
}

TEST_CASE("random parameters") {
  auto a = random_parameters(50, 3);
  CHECK(a == random_parameters(50, 3));
  auto wide = random_parameters(100000, 4);
  CHECK(std::all_of(wide.begin(), wide.end(), [](double t) { return t >= -3.141592653589793 && t < 3.141592653589793; }));
  auto narrow = random_parameters(1000, 4, 0.0, 0.1);
  CHECK(std::all_of(narrow.begin(), narrow.end(), [](double t) { return t >= 0.0 && t < 0.1; }));

  std::set<std::vector<double>> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) seen.insert(random_parameters(8, seed));
  CHECK(seen.size() == 100);
  CHECK_THROWS_AS(random_parameters(3, 0, 1.0, 1.0), ConfigError);
}

TEST_CASE("checkpoint round trip and validation") {
  Checkpoint ck;
  ck.n_qubits = 6;
  ck.n_containers = 3;
  ck.n_slots = 2;
  ck.layout = {1, true, Entanglement::Ladder};
  ck.seed = 42;
  ck.parameters = random_parameters(parameter_count(6, 1, Entanglement::Ladder, true), 1);

  cargoload::testing::TempDir dir("ckpt");
  save_checkpoint(dir / "ck.json", ck);
  auto back = load_checkpoint(dir / "ck.json");
  CHECK(back.n_qubits == 6);
  CHECK(back.n_containers == 3);
  CHECK(back.n_slots == 2);
  CHECK(back.layout.blocks == 1);
  CHECK(back.layout.final_ry);
  CHECK(back.layout.entanglement == Entanglement::Ladder);
  CHECK(back.seed == 42);
  CHECK(back.parameters == ck.parameters);

  auto doc = checkpoint_to_json(ck);
  doc["parameters"].erase(0);
  CHECK_THROWS_AS(checkpoint_from_json(doc), ConfigError);
  doc = checkpoint_to_json(ck);
  doc["header"].erase("blocks");
  CHECK_THROWS_AS(checkpoint_from_json(doc), ConfigError);
  doc = checkpoint_to_json(ck);
  doc["header"]["entanglement"] = "star";
  CHECK_THROWS_AS(checkpoint_from_json(doc), ConfigError);
}
