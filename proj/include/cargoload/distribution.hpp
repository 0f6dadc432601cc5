#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "cargoload/model.hpp"

namespace cargoload {

struct Outcome {
  BasisIndex state = 0;
  double probability = 0.0;
};

// Probability table over basis states, ordered by state index.
struct Distribution {
  std::size_t n_qubits = 0;
  std::vector<Outcome> outcomes;

  double total() const {
    double s = 0.0;
    for (const auto& o : outcomes) s += o.probability;
    return s;
  }
};

struct ShotCounts {
  std::size_t n_qubits = 0;
  std::uint64_t shots = 0;
  std::map<BasisIndex, std::uint64_t> counts;

  double frequency(BasisIndex state) const {
    auto it = counts.find(state);
    return it == counts.end() || shots == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
  }
};

}  // namespace cargoload
