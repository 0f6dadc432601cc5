#include "cargoload/ansatz.hpp"

#include <algorithm>
#include <random>

#include "cargoload/errors.hpp"
#include "cargoload/instance_io.hpp"

namespace cargoload {

std::string to_string(Entanglement e) { return e == Entanglement::Ring ? "ring" : "ladder"; }

Entanglement entanglement_from_string(const std::string& s) {
  if (s == "ring") return Entanglement::Ring;
  if (s == "ladder") return Entanglement::Ladder;
  throw ConfigError("unknown entanglement '" + s + "' (expected ring or ladder)");
}

std::size_t CircuitIR::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [kind](const GateSpec& g) { return g.kind == kind; }));
}

namespace {

void check_shape(std::size_t n_qubits, std::size_t blocks) {
  if (n_qubits < 2) throw DomainError("ansatz needs at least 2 qubits");
  if (blocks < 1) throw DomainError("ansatz needs at least 1 block");
}

}  // namespace

CircuitIR build_circuit(std::size_t n_qubits, std::size_t blocks, Entanglement entanglement, bool final_ry) {
  check_shape(n_qubits, blocks);
  CircuitIR c;
  c.n_qubits = n_qubits;
  c.layout = {blocks, final_ry, entanglement};
  std::size_t p = 0;
  auto ry_layer = [&] {
    for (std::size_t q = 0; q < n_qubits; ++q) c.gates.push_back({GateKind::RY, {q, q}, p++});
  };
  for (std::size_t b = 0; b < blocks; ++b) {
    ry_layer();
    for (std::size_t q = 0; q + 1 < n_qubits; ++q) c.gates.push_back({GateKind::RZZ, {q, q + 1}, p++});
    if (entanglement == Entanglement::Ring) c.gates.push_back({GateKind::RZZ, {0, n_qubits - 1}, p++});
  }
  if (final_ry) ry_layer();
  return c;
}

std::size_t parameter_count(std::size_t n_qubits, std::size_t blocks, Entanglement entanglement, bool final_ry) {
  check_shape(n_qubits, blocks);
  const std::size_t ry = n_qubits * (blocks + (final_ry ? 1 : 0));
  const std::size_t rzz = blocks * (entanglement == Entanglement::Ring ? n_qubits : n_qubits - 1);
  return ry + rzz;
}

std::vector<double> random_parameters(std::size_t count, std::uint64_t seed, double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("parameter range must satisfy lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> theta(count);
  for (auto& t : theta) t = dist(rng);
  return theta;
}

nlohmann::json checkpoint_to_json(const Checkpoint& ck) {
  return {{"header",
           {{"n_qubits", ck.n_qubits},
            {"n_containers", ck.n_containers},
            {"n_slots", ck.n_slots},
            {"blocks", ck.layout.blocks},
            {"entanglement", to_string(ck.layout.entanglement)},
            {"final_ry", ck.layout.final_ry},
            {"seed", ck.seed}}},
          {"parameters", ck.parameters}};
}

Checkpoint checkpoint_from_json(const nlohmann::json& doc) {
  try {
    const auto& h = doc.at("header");
    Checkpoint ck;
    ck.n_qubits = h.at("n_qubits").get<std::size_t>();
    ck.n_containers = h.value("n_containers", std::size_t{0});
    ck.n_slots = h.value("n_slots", std::size_t{0});
    ck.layout.blocks = h.at("blocks").get<std::size_t>();
    ck.layout.entanglement = entanglement_from_string(h.at("entanglement").get<std::string>());
    ck.layout.final_ry = h.at("final_ry").get<bool>();
    ck.seed = h.at("seed").get<std::uint64_t>();
    ck.parameters = doc.at("parameters").get<std::vector<double>>();
    const auto expected = parameter_count(ck.n_qubits, ck.layout.blocks, ck.layout.entanglement, ck.layout.final_ry);
    if (ck.parameters.size() != expected)
      throw ConfigError("checkpoint has " + std::to_string(ck.parameters.size()) + " parameters, header implies " +
                        std::to_string(expected));
    return ck;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  write_text_file(path, checkpoint_to_json(ck).dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) { return checkpoint_from_json(read_json_file(path)); }

}  // namespace cargoload
