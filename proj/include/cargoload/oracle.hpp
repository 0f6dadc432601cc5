#pragma once

#include <cstdint>
#include <vector>

#include "cargoload/constraints.hpp"
#include "cargoload/cost.hpp"
#include "cargoload/model.hpp"

namespace cargoload {

// Conjunction of the loading inequalities, evaluated directly rather than
// through the penalty machinery so the two can be cross-checked.
bool feasible(const ProblemInstance& inst, const Assignment& x);

struct ExactSolution {
  double optimal_weight = 0.0;
  std::vector<Assignment> optima;  // sorted by printed bitstring
  std::uint64_t search_space_size = 0;

  std::vector<BasisIndex> optimal_states() const;
  bool is_optimal(BasisIndex state) const;
};

inline constexpr std::uint64_t kStructuredSearchCap = 100'000'000;
inline constexpr std::size_t kRawSearchQubitCap = 24;

// Product over containers of (1 + m) for Type1/2 and (1 + m - 1) for Type3.
std::uint64_t structured_search_space(const ProblemInstance& inst);

// Every container unloaded, in one slot, or (Type3) in one contiguous pair.
// Throws CapacityError above kStructuredSearchCap options.
ExactSolution solve_exact(const ProblemInstance& inst);

// Same answer from all 2^(n*m) bitstrings. Throws CapacityError above 24 qubits.
ExactSolution solve_exact_raw(const ProblemInstance& inst);

struct EnergyLandscape {
  EnergyTable table;
  BasisIndex argmin = 0;
  double min_energy = 0.0;
  bool argmin_is_optimal = false;
  ExactSolution solution;
};

EnergyLandscape enumerate_energies(const ProblemInstance& inst, const PenaltyConfig& cfg);

}  // namespace cargoload
