#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace cargoload {

enum class GateKind { RY, RZZ };
enum class Entanglement { Ladder, Ring };

std::string to_string(Entanglement e);
Entanglement entanglement_from_string(const std::string& s);

struct GateSpec {
  GateKind kind = GateKind::RY;
  std::array<std::size_t, 2> targets{0, 0};  // targets[1] unused for RY
  std::size_t param_index = 0;
};

struct CircuitLayout {
  std::size_t blocks = 2;
  bool final_ry = false;
  Entanglement entanglement = Entanglement::Ring;
};

// Multi-angle layered ansatz: `blocks` repetitions of [RY on every qubit,
// RZZ entangling block], optionally closed by one more RY layer. Every gate
// owns its own angle and parameters are numbered in gate order.
struct CircuitIR {
  std::size_t n_qubits = 0;
  CircuitLayout layout;
  std::vector<GateSpec> gates;

  std::size_t parameter_count() const { return gates.size(); }
  std::size_t count(GateKind kind) const;
};

// Throws DomainError when n_qubits < 2 or blocks < 1.
CircuitIR build_circuit(std::size_t n_qubits, std::size_t blocks, Entanglement entanglement, bool final_ry);
inline CircuitIR build_circuit(std::size_t n_qubits, const CircuitLayout& layout) {
  return build_circuit(n_qubits, layout.blocks, layout.entanglement, layout.final_ry);
}

std::size_t parameter_count(std::size_t n_qubits, std::size_t blocks, Entanglement entanglement, bool final_ry);

// Uniform draws in [lo, hi), deterministic in seed.
std::vector<double> random_parameters(std::size_t count, std::uint64_t seed, double lo = -3.141592653589793,
                                      double hi = 3.141592653589793);

// Parameter checkpoint: header records the circuit shape the angles belong
// to so a mismatched binding can be refused.
struct Checkpoint {
  std::size_t n_qubits = 0;
  std::size_t n_containers = 0;
  std::size_t n_slots = 0;
  CircuitLayout layout;
  std::uint64_t seed = 0;
  std::vector<double> parameters;
};

nlohmann::json checkpoint_to_json(const Checkpoint& ck);
Checkpoint checkpoint_from_json(const nlohmann::json& doc);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace cargoload
